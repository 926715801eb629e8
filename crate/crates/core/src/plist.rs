//! Partially persistent sorted singly linked list.
//!
//! Uses node copying: every node carries one spare `next` slot stamped with
//! the version that wrote it. Changing a node whose spare slot is already
//! taken copies the node and redirects its predecessor instead, which may
//! cascade toward the head. Each copy retires a full node, so the number of
//! allocated nodes is amortized O(1) per insertion or deletion.
//!
//! Only the newest version may be updated. Updates accumulate into the
//! version under construction until [`PersistentList::commit`] seals it.

pub type ListKey = (i64, i64, u64);

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    key: ListKey,
    item: u32,
    next: u32,
    spare_next: u32,
    spare_version: u32,
    created: u32,
}

#[derive(Debug, Clone, Default)]
pub struct PersistentList {
    nodes: Vec<Node>,
    heads: Vec<u32>,
    head: u32,
    scratch: Vec<u32>,
}

impl PersistentList {
    pub fn new() -> Self {
        PersistentList {
            nodes: Vec::new(),
            heads: Vec::new(),
            head: NIL,
            scratch: Vec::new(),
        }
    }

    fn building(&self) -> u32 {
        self.heads.len() as u32
    }

    /// Number of committed versions.
    pub fn versions(&self) -> usize {
        self.heads.len()
    }

    /// Total nodes ever allocated, including copies.
    pub fn allocations(&self) -> usize {
        self.nodes.len()
    }

    fn latest_next(&self, n: u32) -> u32 {
        let node = &self.nodes[n as usize];
        if node.spare_version != NIL {
            node.spare_next
        } else {
            node.next
        }
    }

    fn next_at(&self, n: u32, version: u32) -> u32 {
        let node = &self.nodes[n as usize];
        if node.spare_version != NIL && node.spare_version <= version {
            node.spare_next
        } else {
            node.next
        }
    }

    /// Fills `scratch` with the newest-version nodes whose key is below `key`
    /// and returns the first node at or past it.
    fn seek(&mut self, key: ListKey) -> u32 {
        let mut path = std::mem::take(&mut self.scratch);
        path.clear();
        let mut cur = self.head;
        while cur != NIL && self.nodes[cur as usize].key < key {
            path.push(cur);
            cur = self.latest_next(cur);
        }
        self.scratch = path;
        cur
    }

    /// Points the node at `scratch[pos]` to `target` in the building version.
    fn set_next(&mut self, mut pos: usize, mut target: u32) {
        let version = self.building();
        loop {
            let x = self.scratch[pos];
            let node = &mut self.nodes[x as usize];
            if node.created == version {
                node.next = target;
                return;
            }
            if node.spare_version == NIL || node.spare_version == version {
                node.spare_version = version;
                node.spare_next = target;
                return;
            }
            let copy = Node {
                key: node.key,
                item: node.item,
                next: target,
                spare_next: NIL,
                spare_version: NIL,
                created: version,
            };
            self.nodes.push(copy);
            target = (self.nodes.len() - 1) as u32;
            if pos == 0 {
                self.head = target;
                return;
            }
            pos -= 1;
        }
    }

    /// Inserts `item` under a key not currently present.
    pub fn insert(&mut self, key: ListKey, item: u32) {
        let succ = self.seek(key);
        debug_assert!(succ == NIL || self.nodes[succ as usize].key != key);
        self.nodes.push(Node {
            key,
            item,
            next: succ,
            spare_next: NIL,
            spare_version: NIL,
            created: self.building(),
        });
        let z = (self.nodes.len() - 1) as u32;
        match self.scratch.len() {
            0 => self.head = z,
            len => self.set_next(len - 1, z),
        }
    }

    /// Removes the entry with `key`; returns whether it was present.
    pub fn remove(&mut self, key: ListKey) -> bool {
        let x = self.seek(key);
        if x == NIL || self.nodes[x as usize].key != key {
            return false;
        }
        let succ = self.latest_next(x);
        match self.scratch.len() {
            0 => self.head = succ,
            len => self.set_next(len - 1, succ),
        }
        true
    }

    /// Seals the building version and returns its index.
    pub fn commit(&mut self) -> usize {
        self.heads.push(self.head);
        self.heads.len() - 1
    }

    /// Entries of a committed version in key order.
    pub fn iter(&self, version: usize) -> Iter<'_> {
        Iter {
            list: self,
            version: version as u32,
            cur: self.heads[version],
        }
    }
}

pub struct Iter<'a> {
    list: &'a PersistentList,
    version: u32,
    cur: u32,
}

impl Iterator for Iter<'_> {
    type Item = (ListKey, u32);

    fn next(&mut self) -> Option<Self::Item> {
        if self.cur == NIL {
            return None;
        }
        let node = &self.list.nodes[self.cur as usize];
        let out = (node.key, node.item);
        self.cur = self.list.next_at(self.cur, self.version);
        Some(out)
    }
}
