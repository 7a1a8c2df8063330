use std::cmp::Ordering;

const ABSENT: u32 = u32::MAX;

/// Indexed binary min-heap over items `0..capacity` with decrease-key.
/// Keys are `(weight, tie)` compared lexicographically.
#[derive(Debug, Clone)]
pub struct IndexedMinHeap {
    heap: Vec<u32>,
    pos: Vec<u32>,
    weight: Vec<f64>,
    tie: Vec<u32>,
}

impl IndexedMinHeap {
    pub fn new(capacity: usize) -> Self {
        IndexedMinHeap {
            heap: Vec::new(),
            pos: vec![ABSENT; capacity],
            weight: vec![f64::INFINITY; capacity],
            tie: vec![u32::MAX; capacity],
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.pos[item] != ABSENT
    }

    pub fn key(&self, item: usize) -> (f64, u32) {
        (self.weight[item], self.tie[item])
    }

    fn less(&self, a: u32, b: u32) -> bool {
        let (a, b) = (a as usize, b as usize);
        match self.weight[a].total_cmp(&self.weight[b]) {
            Ordering::Equal => self.tie[a] < self.tie[b],
            o => o == Ordering::Less,
        }
    }

    /// Inserts `item` or lowers its key; larger keys are ignored.
    /// Returns whether the key changed.
    pub fn push_or_decrease(&mut self, item: usize, weight: f64, tie: u32) -> bool {
        if self.contains(item) {
            let better = match weight.total_cmp(&self.weight[item]) {
                Ordering::Equal => tie < self.tie[item],
                o => o == Ordering::Less,
            };
            if !better {
                return false;
            }
            self.weight[item] = weight;
            self.tie[item] = tie;
            self.sift_up(self.pos[item] as usize);
        } else {
            self.weight[item] = weight;
            self.tie[item] = tie;
            self.pos[item] = self.heap.len() as u32;
            self.heap.push(item as u32);
            self.sift_up(self.heap.len() - 1);
        }
        true
    }

    pub fn pop(&mut self) -> Option<(usize, f64, u32)> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0);
        }
        let t = top as usize;
        self.pos[t] = ABSENT;
        Some((t, self.weight[t], self.tie[t]))
    }

    fn sift_up(&mut self, mut i: usize) {
        let item = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.less(item, self.heap[parent]) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = item;
        self.pos[item as usize] = i as u32;
    }

    fn sift_down(&mut self, mut i: usize) {
        let item = self.heap[i];
        let len = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let child = if right < len && self.less(self.heap[right], self.heap[left]) { right } else { left };
            if !self.less(self.heap[child], item) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i] as usize] = i as u32;
            i = child;
        }
        self.heap[i] = item;
        self.pos[item as usize] = i as u32;
    }
}
