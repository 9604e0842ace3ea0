/// Binary max-heap of variable indices keyed by an external activity array.
#[derive(Debug, Default, Clone)]
pub(crate) struct VarOrder {
    heap: Vec<u32>,
    // position in `heap`, or usize::MAX when absent
    pos: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl VarOrder {
    pub fn new(num_vars: usize) -> VarOrder {
        VarOrder { heap: Vec::with_capacity(num_vars), pos: vec![ABSENT; num_vars + 1] }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.pos[v as usize] != ABSENT
    }

    pub fn insert(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v as usize] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    /// Restores the heap property after `v`'s activity grew.
    pub fn increased(&mut self, v: u32, act: &[f64]) {
        if let Some(&i) = self.pos.get(v as usize).filter(|&&i| i != ABSENT) {
            self.sift_up(i, act);
        }
    }

    pub fn pop_max(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("nonempty");
        self.pos[top as usize] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if !better(v, pv, act) {
                break;
            }
            self.heap[i] = pv;
            self.pos[pv as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && better(self.heap[right], self.heap[left], act) { right } else { left };
            let cv = self.heap[child];
            if !better(cv, v, act) {
                break;
            }
            self.heap[i] = cv;
            self.pos[cv as usize] = i;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }
}

// ties go to the lower index so the order is fully deterministic
#[inline]
fn better(a: u32, b: u32, act: &[f64]) -> bool {
    let (x, y) = (act[a as usize], act[b as usize]);
    x > y || (x == y && a < b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pops_in_activity_order() {
        let act = vec![0.0, 3.0, 1.0, 5.0, 1.0, 0.5];
        let mut h = VarOrder::new(5);
        for v in 1..=5 {
            h.insert(v, &act);
        }
        let order: Vec<u32> = std::iter::from_fn(|| h.pop_max(&act)).collect();
        assert_eq!(order, vec![3, 1, 2, 4, 5]);
    }

    #[test]
    fn increase_key() {
        let mut act = vec![0.0, 1.0, 2.0, 3.0];
        let mut h = VarOrder::new(3);
        for v in 1..=3 {
            h.insert(v, &act);
        }
        act[1] = 10.0;
        h.increased(1, &act);
        assert_eq!(h.pop_max(&act), Some(1));
        h.insert(1, &act);
        assert!(h.contains(1));
        h.insert(1, &act);
        let all: Vec<u32> = std::iter::from_fn(|| h.pop_max(&act)).collect();
        assert_eq!(all, vec![1, 3, 2]);
    }
}
