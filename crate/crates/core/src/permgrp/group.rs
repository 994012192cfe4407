use std::collections::BTreeMap;
use std::hash::BuildHasher;
use std::sync::OnceLock;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

use super::perm::{raw_order, Permutation, Point};
use super::subgroup::Subgroup;
use super::PermError;

/// Index of an element in its group's element table. The identity is 0.
pub type ElemId = u32;

/// Default element cap for enumeration.
pub const DEFAULT_SIZE_CAP: usize = 2_000_000;

fn hash_images(images: &[Point]) -> u64 {
    FxBuildHasher.hash_one(images)
}

/// Flat element table with hashed lookup by image array.
#[derive(Clone, Debug)]
struct Store {
    degree: usize,
    data: Vec<Point>,
    table: HashTable<ElemId>,
}

impl Store {
    fn new(degree: usize) -> Self {
        Self { degree, data: Vec::new(), table: HashTable::new() }
    }

    fn len(&self) -> usize {
        if self.degree == 0 {
            0
        } else {
            self.data.len() / self.degree
        }
    }

    fn get(&self, id: ElemId) -> &[Point] {
        let s = id as usize * self.degree;
        &self.data[s..s + self.degree]
    }

    fn find(&self, images: &[Point]) -> Option<ElemId> {
        let d = self.degree;
        let data = &self.data;
        self.table
            .find(hash_images(images), |&i| &data[i as usize * d..(i as usize + 1) * d] == images)
            .copied()
    }

    fn insert(&mut self, images: &[Point]) -> (ElemId, bool) {
        if let Some(id) = self.find(images) {
            return (id, false);
        }
        let id = self.len() as ElemId;
        self.data.extend_from_slice(images);
        let d = self.degree;
        let data = &self.data;
        self.table.insert_unique(hash_images(images), id, |&i| {
            hash_images(&data[i as usize * d..(i as usize + 1) * d])
        });
        (id, true)
    }
}

/// A permutation group together with its fully enumerated element table.
#[derive(Debug)]
pub struct PermutationGroup {
    generators: Vec<Permutation>,
    store: Store,
    gen_ids: Vec<ElemId>,
    orders: Vec<u32>,
    inverses: Vec<ElemId>,
    size_cap: usize,
    classes: OnceLock<(Vec<Vec<ElemId>>, Vec<u32>)>,
    normals: OnceLock<Vec<Subgroup>>,
}

impl PermutationGroup {
    /// Enumerates `<generators>` with the default size cap.
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::generate_capped(degree, generators, DEFAULT_SIZE_CAP)
    }

    /// Breadth-first closure over the generators, failing once more than
    /// `size_cap` elements are found.
    pub fn generate_capped(degree: usize, generators: Vec<Permutation>, size_cap: usize) -> Result<Self, PermError> {
        if degree == 0 || degree > Point::MAX as usize {
            return Err(PermError::Degree(degree));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let mut store = Store::new(degree);
        store.insert(Permutation::identity(degree).images());
        let mut buf = vec![0 as Point; degree];
        let mut i = 0;
        while i < store.len() {
            for g in &generators {
                let x = store.get(i as ElemId);
                for (k, &p) in x.iter().enumerate() {
                    buf[k] = g.images()[p as usize];
                }
                let (_, new) = store.insert(&buf);
                if new && store.len() > size_cap {
                    return Err(PermError::TooLarge { cap: size_cap });
                }
            }
            i += 1;
        }
        let n = store.len();
        let orders: Vec<u32> = (0..n).map(|i| raw_order(store.get(i as ElemId)) as u32).collect();
        let mut inverses = vec![0; n];
        for i in 0..n {
            let x = store.get(i as ElemId);
            for (k, &p) in x.iter().enumerate() {
                buf[p as usize] = k as Point;
            }
            inverses[i] = store.find(&buf).expect("closed under inverses");
        }
        let gen_ids = generators.iter().map(|g| store.find(g.images()).expect("generator enumerated")).collect();
        Ok(Self {
            generators,
            store,
            gen_ids,
            orders,
            inverses,
            size_cap,
            classes: OnceLock::new(),
            normals: OnceLock::new(),
        })
    }

    /// Materializes a subgroup as a group in its own right.
    pub fn restrict(&self, h: &Subgroup) -> PermutationGroup {
        let gens = h.gens().iter().map(|&g| self.perm(g)).collect();
        Self::generate_capped(self.degree(), gens, self.size_cap).expect("subgroup within cap")
    }

    pub fn degree(&self) -> usize {
        self.store.degree
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn order(&self) -> u64 {
        self.store.len() as u64
    }

    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.gen_ids
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + '_ {
        0..self.store.len() as ElemId
    }

    pub fn images(&self, x: ElemId) -> &[Point] {
        self.store.get(x)
    }

    pub fn perm(&self, x: ElemId) -> Permutation {
        Permutation::from_raw(self.store.get(x))
    }

    /// Element id of `p`, or `None` when `p` is not in the group.
    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        if p.degree() != self.degree() {
            return None;
        }
        self.store.find(p.images())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.id_of(p).is_some()
    }

    /// Product `x * y`, applying `x` first.
    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        let a = self.store.get(x);
        let b = self.store.get(y);
        let mut buf = [0 as Point; 128];
        let id = if a.len() <= buf.len() {
            for (k, &p) in a.iter().enumerate() {
                buf[k] = b[p as usize];
            }
            self.store.find(&buf[..a.len()])
        } else {
            let v: Vec<Point> = a.iter().map(|&p| b[p as usize]).collect();
            self.store.find(&v)
        };
        id.expect("group closed under products")
    }

    pub fn inv(&self, x: ElemId) -> ElemId {
        self.inverses[x as usize]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: ElemId, y: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: ElemId, k: u64) -> ElemId {
        let k = k % self.orders[x as usize] as u64;
        let mut acc = 0;
        let mut base = x;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: ElemId) -> u64 {
        self.orders[x as usize] as u64
    }

    pub fn commute(&self, x: ElemId, y: ElemId) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Number of elements of each order.
    pub fn order_counts(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for &o in &self.orders {
            *m.entry(o as u64).or_insert(0) += 1;
        }
        m
    }

    /// `|G(d)| = |{x : x^d = 1}|`.
    pub fn count_order_dividing(&self, d: u64) -> u64 {
        self.orders.iter().filter(|&&o| d % o as u64 == 0).count() as u64
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.order_counts().keys().fold(1u64, |a, b| a.lcm(b))
    }

    /// Conjugacy classes (ordered by least member, identity first) and the
    /// class index of every element.
    pub fn conjugacy_classes(&self) -> &[Vec<ElemId>] {
        &self.class_data().0
    }

    pub fn class_of(&self, x: ElemId) -> usize {
        self.class_data().1[x as usize] as usize
    }

    fn class_data(&self) -> &(Vec<Vec<ElemId>>, Vec<u32>) {
        self.classes.get_or_init(|| {
            let n = self.len();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for x in 0..n as ElemId {
                if class_of[x as usize] != u32::MAX {
                    continue;
                }
                let c = classes.len() as u32;
                class_of[x as usize] = c;
                let mut orbit = vec![x];
                let mut i = 0;
                while i < orbit.len() {
                    let y = orbit[i];
                    for &g in &self.gen_ids {
                        let z = self.conj(y, g);
                        if class_of[z as usize] == u32::MAX {
                            class_of[z as usize] = c;
                            orbit.push(z);
                        }
                    }
                    i += 1;
                }
                orbit.sort_unstable();
                classes.push(orbit);
            }
            (classes, class_of)
        })
    }

    pub(crate) fn normals_cell(&self) -> &OnceLock<Vec<Subgroup>> {
        &self.normals
    }
}
