//! The generalized Temperley–Lieb algebra TL(X) in its t̃-basis indexed by
//! W_c, with the monomial (b) and canonical (c) bases.
//!
//! Products are computed one generator at a time. Multiplying t̃_w by t̃_s
//! either hits a descent (quadratic relation), stays in W_c, or produces a
//! weakly complex element; in the last case the alternating chain found in
//! the heap exposes a factor w_st which is rewritten as
//! −Σ_{u < w_st} v^{ℓ(u)−m} t̃_u, and each resulting shorter word is
//! evaluated recursively.

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::boundary::kernel_dim;
use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::heap::{Heap, MultiplyStatus, Side};
use crate::laurent::LaurentPoly;
use crate::star::FcElement;

/// A finitely supported A-linear combination of t̃_w, w ∈ W_c.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TlElement {
    terms: BTreeMap<FcElement, LaurentPoly>,
}

impl TlElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// t̃_w
    pub fn basis(w: FcElement) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: FcElement, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing (length, word) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&FcElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &FcElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: FcElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TlElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (w, p) in &other.terms {
            self.add_term(w.clone(), &(c * p));
        }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> TlElement {
        let mut out = TlElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// The largest basis element in the support.
    pub fn leading(&self) -> Option<(&FcElement, &LaurentPoly)> {
        self.terms.iter().next_back()
    }

    /// Every coefficient lies in A⁻.
    pub fn in_lattice(&self) -> bool {
        self.terms.values().all(LaurentPoly::in_a_minus)
    }

    /// Every coefficient lies in v⁻¹A⁻.
    pub fn in_v_inverse_lattice(&self) -> bool {
        self.terms.values().all(LaurentPoly::in_v_inverse_a_minus)
    }

    /// Membership in L^s_L (left) or L^s_R (right): coefficients of t̃_w with
    /// s a descent of w in A⁻, all others in v⁻¹A⁻.
    pub fn in_sub_lattice(&self, s: usize, side: Side) -> bool {
        self.terms.iter().all(|(w, p)| {
            if w.has_descent(side, s) {
                p.in_a_minus()
            } else {
                p.in_v_inverse_a_minus()
            }
        })
    }
}

impl std::ops::Add<&TlElement> for TlElement {
    type Output = TlElement;
    fn add(mut self, rhs: &TlElement) -> TlElement {
        self.add_scaled(rhs, &LaurentPoly::one());
        self
    }
}

impl std::ops::Sub<&TlElement> for TlElement {
    type Output = TlElement;
    fn sub(mut self, rhs: &TlElement) -> TlElement {
        self.add_scaled(rhs, &LaurentPoly::from(-1));
        self
    }
}

impl fmt::Display for TlElement {
    /// One `coeff * t[word]` line per term, sorted by length then word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            if p.terms().count() > 1 {
                write!(f, "({p}) * t[{w}]")?;
            } else {
                write!(f, "{p} * t[{w}]")?;
            }
        }
        Ok(())
    }
}

/// A c-basis element together with the integers μ subtracted while building it.
#[derive(Clone, Debug)]
pub struct CElement {
    pub element: TlElement,
    /// The generator s used in c_s · c_{sw}.
    pub s: Option<usize>,
    pub mu: Vec<(FcElement, BigInt)>,
}

/// Multiplication context over one Coxeter graph, with memo tables. Not
/// `Sync`; give each worker thread its own instance.
pub struct TlAlgebra {
    graph: Arc<CoxeterGraph>,
    identity: FcElement,
    gen_cache: RefCell<HashMap<(Side, usize, Vec<usize>), TlElement>>,
    word_cache: RefCell<HashMap<Vec<usize>, TlElement>>,
    c_cache: RefCell<HashMap<Vec<usize>, Arc<CElement>>>,
}

impl TlAlgebra {
    pub fn new(graph: &Arc<CoxeterGraph>) -> Self {
        TlAlgebra {
            graph: graph.clone(),
            identity: FcElement::identity(graph),
            gen_cache: RefCell::default(),
            word_cache: RefCell::default(),
            c_cache: RefCell::default(),
        }
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        &self.graph
    }

    pub fn one(&self) -> TlElement {
        TlElement::basis(self.identity.clone())
    }

    pub fn element(&self, word: &[usize]) -> Result<FcElement> {
        FcElement::new(&self.graph, word)
    }

    /// t̃_w for a reduced FC word.
    pub fn t(&self, word: &[usize]) -> Result<TlElement> {
        Ok(TlElement::basis(self.element(word)?))
    }

    /// t̃_s · t̃_w (left) or t̃_w · t̃_s (right).
    pub fn gen_times_basis(&self, side: Side, s: usize, w: &FcElement) -> TlElement {
        let key = (side, s, w.word().to_vec());
        if let Some(hit) = self.gen_cache.borrow().get(&key) {
            return hit.clone();
        }
        let status = w
            .heap()
            .multiply_status(side, s)
            .expect("FC heap and valid generator");
        let result = match status {
            MultiplyStatus::Descent => {
                let heap = w.heap();
                let v = (0..heap.len())
                    .find(|&v| {
                        heap.label(v) == s
                            && match side {
                                Side::Left => heap.is_minimal(v),
                                Side::Right => heap.is_maximal(v),
                            }
                    })
                    .expect("descent vertex");
                let shorter = FcElement::from_heap(&heap.delete(&[v]).expect("in range"))
                    .expect("subheap of an FC heap");
                let mut out = TlElement::basis(shorter);
                out.add_term(w.clone(), &LaurentPoly::v_minus_v_inverse());
                out
            }
            MultiplyStatus::StillFc(ext) => {
                TlElement::basis(FcElement::from_heap(&ext).expect("checked FC"))
            }
            MultiplyStatus::WeaklyComplex(wit) => {
                self.reduce_weakly_complex(&wit.extended, &wit.extended_chain, s, wit.t)
            }
        };
        self.gen_cache.borrow_mut().insert(key, result.clone());
        result
    }

    /// t̃_x for a reduced word x whose heap contains the convex alternating
    /// chain `chain` of length m(s,t): write x = u′ · w_st · u″ and substitute.
    fn reduce_weakly_complex(&self, heap: &Heap, chain: &[usize], s: usize, t: usize) -> TlElement {
        let m = chain.len();
        let mut in_chain = heap.vertex_set(chain).expect("chain in range");
        let mut lower = fixedbitset::FixedBitSet::with_capacity(heap.len());
        for &c in chain {
            lower.union_with(heap.below(c));
        }
        lower.difference_with(&in_chain);
        let prefix: Vec<usize> = lower.ones().map(|v| heap.label(v)).collect();
        in_chain.union_with(&lower);
        let suffix: Vec<usize> = (0..heap.len())
            .filter(|&v| !in_chain.contains(v))
            .map(|v| heap.label(v))
            .collect();
        let mut out = TlElement::zero();
        for u in proper_dihedral_words(s, t, m) {
            let mut word = prefix.clone();
            word.extend_from_slice(&u);
            word.extend_from_slice(&suffix);
            let value = self.eval_word(&word);
            out.add_scaled(&value, &LaurentPoly::monomial(-1, u.len() as i32 - m as i32));
        }
        out
    }

    /// The image of t̃_{a₁} t̃_{a₂} ⋯ t̃_{a_k} for an arbitrary word.
    pub fn eval_word(&self, word: &[usize]) -> TlElement {
        let heap = Heap::of_word_unchecked(&self.graph, word);
        let key = heap.canonical_word();
        if let Some(hit) = self.word_cache.borrow().get(&key) {
            return hit.clone();
        }
        let result = if heap.is_fc() {
            TlElement::basis(FcElement::from_fc_heap(&heap))
        } else {
            let rest = self.eval_word(&key[1..]);
            self.mult_gen(Side::Left, key[0], &rest)
        };
        self.word_cache.borrow_mut().insert(key, result.clone());
        result
    }

    pub fn mult_gen(&self, side: Side, s: usize, x: &TlElement) -> TlElement {
        let mut out = TlElement::zero();
        for (w, p) in x.terms() {
            out.add_scaled(&self.gen_times_basis(side, s, w), p);
        }
        out
    }

    pub fn mult_gen_left(&self, s: usize, x: &TlElement) -> TlElement {
        self.mult_gen(Side::Left, s, x)
    }

    pub fn mult_gen_right(&self, s: usize, x: &TlElement) -> TlElement {
        self.mult_gen(Side::Right, s, x)
    }

    pub fn mult(&self, x: &TlElement, y: &TlElement) -> TlElement {
        let mut out = TlElement::zero();
        for (w, p) in x.terms() {
            let mut acc = y.clone();
            for &s in w.word().iter().rev() {
                acc = self.mult_gen_left(s, &acc);
            }
            out.add_scaled(&acc, p);
        }
        out
    }

    /// b_s = v⁻¹t̃_1 + t̃_s
    pub fn b_generator(&self, s: usize) -> TlElement {
        let mut out = self.one().scaled(&LaurentPoly::monomial(1, -1));
        out.add_term(
            FcElement::new(&self.graph, &[s]).expect("generator"),
            &LaurentPoly::one(),
        );
        out
    }

    /// b_{a₁} ⋯ b_{a_k} for an arbitrary word.
    pub fn b_of_word(&self, word: &[usize]) -> TlElement {
        let mut acc = self.one();
        let v_inv = LaurentPoly::monomial(1, -1);
        for &s in word.iter().rev() {
            let mut next = self.mult_gen_left(s, &acc);
            next.add_scaled(&acc, &v_inv);
            acc = next;
        }
        acc
    }

    /// The monomial basis element b_w.
    pub fn b_element(&self, w: &FcElement) -> TlElement {
        self.b_of_word(w.word())
    }

    pub fn c_element(&self, w: &FcElement) -> Result<TlElement> {
        Ok(self.c_element_detail(w)?.element.clone())
    }

    /// c_w by induction on length: c_s · c_{sw} minus μ-multiples of lower c_y.
    pub fn c_element_detail(&self, w: &FcElement) -> Result<Arc<CElement>> {
        if let Some(hit) = self.c_cache.borrow().get(w.word()) {
            return Ok(hit.clone());
        }
        let detail = if w.is_identity() {
            CElement {
                element: self.one(),
                s: None,
                mu: Vec::new(),
            }
        } else {
            let s = w.word()[0];
            let sw = FcElement::new(&self.graph, &w.word()[1..])?;
            let c_sw = self.c_element(&sw)?;
            let mut x = self.mult_gen_left(s, &c_sw);
            x.add_scaled(&c_sw, &LaurentPoly::monomial(1, -1));
            let mut mu = Vec::new();
            loop {
                let offender = x
                    .terms()
                    .rev()
                    .find(|(y, p)| *y != w && !p.in_v_inverse_a_minus())
                    .map(|(y, p)| (y.clone(), p.clone()));
                let Some((y, p)) = offender else { break };
                if p.max_degree() != Some(0) {
                    return Err(self.postcondition(w, &y, &p));
                }
                let m = p.coeff(0);
                let c_y = self.c_element(&y)?;
                x.add_scaled(&c_y, &LaurentPoly::monomial(-m.clone(), 0));
                mu.push((y, m));
            }
            let lead = x.coeff(w);
            if lead != LaurentPoly::one() {
                return Err(self.postcondition(w, w, &lead));
            }
            CElement {
                element: x,
                s: Some(s),
                mu,
            }
        };
        let detail = Arc::new(detail);
        self.c_cache
            .borrow_mut()
            .insert(w.word().to_vec(), detail.clone());
        Ok(detail)
    }

    fn postcondition(&self, w: &FcElement, y: &FcElement, p: &LaurentPoly) -> Error {
        Error::CBasisPostcondition {
            word: w.to_string(),
            term: y.to_string(),
            coefficient: p.to_string(),
        }
    }

    /// Expands `x` over a basis {β_y} whose elements are t̃_y plus strictly
    /// shorter terms, by repeatedly cancelling the leading term.
    pub fn expand_in_basis<F>(&self, x: &TlElement, mut basis: F) -> Result<BTreeMap<FcElement, LaurentPoly>>
    where
        F: FnMut(&FcElement) -> Result<TlElement>,
    {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some((y, p)) = rest.leading().map(|(y, p)| (y.clone(), p.clone())) {
            let b = basis(&y)?;
            debug_assert_eq!(b.coeff(&y), LaurentPoly::one());
            rest.add_scaled(&b, &-p.clone());
            out.insert(y, p);
        }
        Ok(out)
    }

    pub fn expand_in_c_basis(&self, x: &TlElement) -> Result<BTreeMap<FcElement, LaurentPoly>> {
        self.expand_in_basis(x, |y| self.c_element(y))
    }

    pub fn expand_in_b_basis(&self, x: &TlElement) -> Result<BTreeMap<FcElement, LaurentPoly>> {
        self.expand_in_basis(x, |y| Ok(self.b_element(y)))
    }
}

/// Reduced words of the elements u < w_st of the dihedral group: the identity
/// and both alternating words of each length 1..m−1.
pub fn proper_dihedral_words(s: usize, t: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for len in 1..m {
        for first in [s, t] {
            let other = if first == s { t } else { s };
            out.push((0..len).map(|i| if i % 2 == 0 { first } else { other }).collect());
        }
    }
    out
}

/// dim ker ∂ of the heap of an arbitrary word.
pub fn h_function(graph: &Arc<CoxeterGraph>, word: &[usize]) -> Result<usize> {
    Ok(kernel_dim(&Heap::of_word(graph, word)?))
}

/// A weakly complex product found while checking t̃_x ∈ v⁻¹L.
#[derive(Clone, Debug)]
pub struct PropertyWCase {
    pub w: FcElement,
    pub s: usize,
    /// t̃ of the reduced word s·w.
    pub value: TlElement,
    pub holds: bool,
}

/// Every weakly complex s·w with w ∈ W_c of length ≤ `max_len`.
pub fn property_w_cases(alg: &TlAlgebra, elements: &[FcElement]) -> Vec<PropertyWCase> {
    let mut out = Vec::new();
    for w in elements {
        for s in alg.graph().generators() {
            let status = w.heap().multiply_status(Side::Left, s).expect("FC element");
            if let MultiplyStatus::WeaklyComplex(_) = status {
                let mut word = vec![s];
                word.extend_from_slice(w.word());
                let value = alg.eval_word(&word);
                let holds = value.in_v_inverse_lattice();
                out.push(PropertyWCase {
                    w: w.clone(),
                    s,
                    value,
                    holds,
                });
            }
        }
    }
    out
}

impl TlAlgebra {
    /// c_x · c_y expanded in the c-basis.
    pub fn c_structure_constants(
        &self,
        x: &FcElement,
        y: &FcElement,
    ) -> Result<BTreeMap<FcElement, LaurentPoly>> {
        let product = self.mult(&self.c_element(x)?, &self.c_element(y)?);
        self.expand_in_c_basis(&product)
    }
}

/// True when every coefficient of every structure constant is ≥ 0.
pub fn all_nonnegative(table: &BTreeMap<FcElement, LaurentPoly>) -> bool {
    table.values().all(LaurentPoly::is_nonnegative)
}
