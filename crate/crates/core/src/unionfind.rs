/// Disjoint sets over `0..n` with path halving and union by size.
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
    }

    /// Class index of every element, classes numbered by least member.
    pub fn classes(&mut self) -> (Vec<u32>, Vec<usize>) {
        let n = self.parent.len();
        let mut class_of_root = vec![u32::MAX; n];
        let mut class_of = vec![0; n];
        let mut firsts = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if class_of_root[r] == u32::MAX {
                class_of_root[r] = firsts.len() as u32;
                firsts.push(x);
            }
            class_of[x] = class_of_root[r];
        }
        (class_of, firsts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_numbered_by_least_member() {
        let mut uf = UnionFind::new(6);
        uf.union(4, 1);
        uf.union(5, 3);
        uf.union(3, 1);
        let (class_of, firsts) = uf.classes();
        assert_eq!(firsts, vec![0, 1, 2]);
        assert_eq!(class_of, vec![0, 1, 2, 1, 1, 1]);
    }
}
