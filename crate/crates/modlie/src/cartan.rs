//! Construction of finite-dimensional Lie (super)algebras g(A) from a Cartan
//! matrix A with a parity vector.
//!
//! The positive half grows degree by degree: candidates at degree d are the
//! brackets of already-constructed basis elements with degrees summing to d
//! (plus squares of odd elements at p = 2).  Because every lower degree is
//! already reduced, an element of degree d belongs to the defining radical —
//! the maximal ideal meeting the torus trivially — exactly when all single
//! lowerings [y_j, -] kill it.  The chosen candidates become basis elements;
//! every other candidate is expressed over them through its lowering image,
//! which also yields the structure constants of the half.  The negative half
//! is grown by the mirrored pass (raising with x_j), forced onto the same
//! candidate basis.  Mixed brackets are then computed by a memoized recursion
//! on the super Jacobi identity with base case [x_i, y_j] = delta_ij h_i.
//!
//! A degenerate matrix contributes grading elements d_1..d_k adjoined to the
//! torus (named h_{n+1}..h_{n+k}) and central combinations of the coroots;
//! the pairs (C_i, D_j) give k^2 outer derivations C_i (x) d(D_j).

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::algebra::{unit, BasisElement, Element, Parity, SuperAlgebra};
use crate::cohomology::{Cochain, Coeffs};
use crate::linalg::{kernel_basis, vec_add_scaled, vec_scale, SparseMat, SparseVec, Span};
use crate::scalar::{Poly, K};

/// Bracket word over the Chevalley generators of one half.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Word {
    Gen(usize),
    Br(Box<Word>, Box<Word>),
    Sq(Box<Word>),
}

impl Word {
    pub fn degree(&self) -> usize {
        match self {
            Word::Gen(_) => 1,
            Word::Br(a, b) => a.degree() + b.degree(),
            Word::Sq(a) => 2 * a.degree(),
        }
    }

    pub fn render(&self, letter: char) -> String {
        match self {
            Word::Gen(i) => format!("{}{}", letter, i + 1),
            Word::Br(a, b) => format!("[{},{}]", a.render(letter), b.render(letter)),
            Word::Sq(a) => match **a {
                Word::Gen(_) => format!("{}^2", a.render(letter)),
                _ => format!("({})^2", a.render(letter)),
            },
        }
    }
}

/// Parse a word like "[x_2,[x_1,x_2]]" or "x_2^2"; underscores are optional.
pub fn parse_word(s: &str) -> Result<Word, String> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0usize;
    let w = parse_word_at(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err(format!("trailing input in word `{s}` at offset {pos}"));
    }
    Ok(w)
}

fn parse_word_at(c: &[char], pos: &mut usize) -> Result<Word, String> {
    let mut w = if c.get(*pos) == Some(&'[') {
        *pos += 1;
        let a = parse_word_at(c, pos)?;
        if c.get(*pos) != Some(&',') {
            return Err(format!("expected `,` at offset {}", *pos));
        }
        *pos += 1;
        let b = parse_word_at(c, pos)?;
        if c.get(*pos) != Some(&']') {
            return Err(format!("expected `]` at offset {}", *pos));
        }
        *pos += 1;
        Word::Br(Box::new(a), Box::new(b))
    } else if c.get(*pos) == Some(&'x') {
        *pos += 1;
        if c.get(*pos) == Some(&'_') {
            *pos += 1;
        }
        let start = *pos;
        while c.get(*pos).map(|d| d.is_ascii_digit()) == Some(true) {
            *pos += 1;
        }
        if start == *pos {
            return Err(format!("expected generator index at offset {}", *pos));
        }
        let k: usize = c[start..*pos].iter().collect::<String>().parse().unwrap();
        if k == 0 {
            return Err("generator indices are 1-based".into());
        }
        Word::Gen(k - 1)
    } else {
        return Err(format!("unexpected character at offset {}", *pos));
    };
    if c.get(*pos) == Some(&'^') {
        if c.get(*pos + 1) != Some(&'2') {
            return Err(format!("only squares are supported, offset {}", *pos));
        }
        *pos += 2;
        w = Word::Sq(Box::new(w));
    }
    Ok(w)
}

/// Substitute composite x_k (k > n generators) by earlier trees.
fn resolve_word(w: &Word, n: usize, earlier: &[Word]) -> Result<Word, String> {
    Ok(match w {
        Word::Gen(i) => {
            if *i < n {
                Word::Gen(*i)
            } else if *i - n < earlier.len() {
                earlier[*i - n].clone()
            } else {
                return Err(format!("word references undefined x{}", i + 1));
            }
        }
        Word::Br(a, b) => Word::Br(
            Box::new(resolve_word(a, n, earlier)?),
            Box::new(resolve_word(b, n, earlier)?),
        ),
        Word::Sq(a) => Word::Sq(Box::new(resolve_word(a, n, earlier)?)),
    })
}

#[derive(Clone)]
pub struct CartanSpec {
    pub p: u32,
    pub entries: Vec<Vec<K>>,
    pub parities: Vec<Parity>,
    /// Expected positive bracket words past the generators, in listing order.
    pub words: Vec<Word>,
    pub max_degree: usize,
}

impl CartanSpec {
    pub fn new(p: u32, rows: &[Vec<i64>], parities: &[Parity]) -> CartanSpec {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&e| K::fp(e, p)).collect())
            .collect();
        CartanSpec {
            p,
            entries,
            parities: parities.to_vec(),
            words: vec![],
            max_degree: 40,
        }
    }

    /// Entries as tokens: integers, `a` (the symbolic parameter), sums like
    /// `a+1`, and the diagonal tokens `ev` (0) / `od` (1).
    pub fn from_tokens(p: u32, rows: &[Vec<&str>], parities: &[Parity]) -> Result<CartanSpec, String> {
        let mut entries = vec![];
        for row in rows {
            let mut out = vec![];
            for tok in row {
                out.push(parse_entry(tok, p)?);
            }
            entries.push(out);
        }
        Ok(CartanSpec {
            p,
            entries,
            parities: parities.to_vec(),
            words: vec![],
            max_degree: 40,
        })
    }

    /// Attach the listing's word basis (one string per x_{n+1}, x_{n+2}, ...).
    pub fn with_words(mut self, words: &[&str]) -> Result<CartanSpec, String> {
        let n = self.parities.len();
        let mut resolved: Vec<Word> = vec![];
        for s in words {
            let w = parse_word(s)?;
            resolved.push(resolve_word(&w, n, &resolved)?);
        }
        self.words = resolved;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.parities.len()
    }
}

fn parse_entry(tok: &str, p: u32) -> Result<K, String> {
    let t = tok.trim();
    match t {
        "ev" => return Ok(K::zero(p)),
        "od" => return Ok(K::one(p)),
        _ => {}
    }
    let mut acc = K::zero(p);
    for term in t.split('+') {
        let term = term.trim();
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let v = if let Some(coeff) = body.strip_suffix('a') {
            let c: i64 = if coeff.is_empty() { 1 } else { coeff.parse().map_err(|_| format!("bad entry `{tok}`"))? };
            K::fp(c, p).mul(&K::t(p))
        } else {
            let c: i64 = body.parse().map_err(|_| format!("bad entry `{tok}`"))?;
            K::fp(c, p)
        };
        acc = if neg { acc.sub(&v) } else { acc.add(&v) };
    }
    Ok(acc)
}

/// How a half-basis element was created.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Gen(usize),
    Pair(usize, usize),
    Sq(usize),
}

/// Lowering image: a combination of half elements one degree down, plus a
/// coroot part (only when the lowered element has degree 1).
#[derive(Clone, Default)]
struct Low {
    half: SparseVec,
    torus: SparseVec,
}

struct Half {
    deg: Vec<usize>,
    par: Vec<Parity>,
    mdeg: Vec<Vec<i64>>,
    expr: Vec<Expr>,
    word: Vec<Word>,
    by_degree: Vec<Vec<usize>>,
    /// [a, b] for evaluated ordered pairs, over half indices (both orientations).
    pair: BTreeMap<(usize, usize), SparseVec>,
    /// s(w) at p = 2 for odd w, over half indices; absent = zero.
    sq: BTreeMap<usize, SparseVec>,
    low: Vec<Vec<Low>>,
    chosen: Vec<Vec<Expr>>,
    max_degree_built: usize,
}

fn ksign(p: u32, a: Parity, b: Parity) -> K {
    if a == Parity::Odd && b == Parity::Odd {
        K::fp(-1, p)
    } else {
        K::one(p)
    }
}

struct Grower<'a> {
    spec: &'a CartanSpec,
    /// +1 for the positive half, -1 for the negative half (torus eigenvalues).
    tsign: i64,
    /// true: lowering base is [y_j, x_i]; false: raising base [x_j, y_i].
    positive: bool,
    half: Half,
    bad: BTreeSet<u64>,
}

impl<'a> Grower<'a> {
    fn new(spec: &'a CartanSpec, positive: bool) -> Grower<'a> {
        let n = spec.size();
        let mut half = Half {
            deg: vec![],
            par: vec![],
            mdeg: vec![],
            expr: vec![],
            word: vec![],
            by_degree: vec![vec![], vec![]],
            pair: BTreeMap::new(),
            sq: BTreeMap::new(),
            low: vec![],
            chosen: vec![],
            max_degree_built: 1,
        };
        for i in 0..n {
            let mut m = vec![0i64; n];
            m[i] = 1;
            half.deg.push(1);
            half.par.push(spec.parities[i]);
            half.mdeg.push(m);
            half.expr.push(Expr::Gen(i));
            half.word.push(Word::Gen(i));
            half.by_degree[1].push(i);
            half.low.push(vec![]);
        }
        Grower {
            spec,
            tsign: if positive { 1 } else { -1 },
            positive,
            half,
            bad: BTreeSet::new(),
        }
    }

    fn p(&self) -> u32 {
        self.spec.p
    }

    /// Eigenvalue of the coroot h_l on a word of multidegree m (this half's sign applied).
    fn eig(&self, l: usize, m: &[i64]) -> K {
        let p = self.p();
        let mut acc = K::zero(p);
        for (j, &mu) in m.iter().enumerate() {
            acc = acc.add(&self.spec.entries[l][j].mul(&K::fp(mu, p)));
        }
        acc.mul(&K::fp(self.tsign, p))
    }

    /// [g_j, e] for the opposite-half generator g_j and half element e.
    fn low_of(&self, e: usize, j: usize) -> Low {
        if self.half.deg[e] == 1 {
            let mut t = Low::default();
            if e == j {
                let c = if self.positive {
                    // [y_j, x_j] = -(-1)^{p_j} h_j
                    ksign(self.p(), self.half.par[j], self.half.par[j]).neg()
                } else {
                    // [x_j, y_j] = h_j
                    K::one(self.p())
                };
                t.torus = vec![(j, c)];
            }
            t
        } else {
            self.half.low[e][j].clone()
        }
    }

    fn pair_get(&self, a: usize, b: usize) -> SparseVec {
        if a == b {
            // [e, e] = 0 for even e at any p and for any e at p = 2
            if self.half.par[a] == Parity::Even || self.p() == 2 {
                return vec![];
            }
        }
        self.half
            .pair
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| panic!("pair ({a}, {b}) not evaluated"))
    }

    /// [lv, b] where lv is a lowering image.
    fn lv_left(&self, lv: &Low, b: usize) -> SparseVec {
        let p = self.p();
        let mut out: SparseVec = vec![];
        for (u, c) in &lv.half {
            out = vec_add_scaled(&out, &self.pair_get(*u, b), c);
        }
        for (l, c) in &lv.torus {
            let e = self.eig(*l, &self.half.mdeg[b]).mul(c);
            out = vec_add_scaled(&out, &unit(b, p), &e);
        }
        out
    }

    /// [a, lv].
    fn left_elem(&self, a: usize, lv: &Low) -> SparseVec {
        let p = self.p();
        let mut out: SparseVec = vec![];
        for (u, c) in &lv.half {
            out = vec_add_scaled(&out, &self.pair_get(a, *u), c);
        }
        for (l, c) in &lv.torus {
            // [a, h_l] = -[h_l, a]
            let e = self.eig(*l, &self.half.mdeg[a]).neg().mul(c);
            out = vec_add_scaled(&out, &unit(a, p), &e);
        }
        out
    }

    /// Lowering images of a candidate, one per opposite generator.
    fn cand_low(&self, c: &Expr) -> Vec<SparseVec> {
        let p = self.p();
        let n = self.spec.size();
        let mut out = vec![];
        for j in 0..n {
            let v = match c {
                Expr::Gen(_) => unreachable!("generators are never candidates"),
                Expr::Pair(a, b) => {
                    let t1 = self.lv_left(&self.low_of(*a, j), *b);
                    let t2 = self.left_elem(*a, &self.low_of(*b, j));
                    let s = ksign(p, self.spec.parities[j], self.half.par[*a]);
                    vec_add_scaled(&t1, &t2, &s)
                }
                Expr::Sq(w) => self.lv_left(&self.low_of(*w, j), *w),
            };
            out.push(v);
        }
        out
    }

    fn cand_meta(&self, c: &Expr) -> (Vec<i64>, Parity, Word) {
        match c {
            Expr::Gen(_) => unreachable!(),
            Expr::Pair(a, b) => {
                let m: Vec<i64> = self.half.mdeg[*a]
                    .iter()
                    .zip(&self.half.mdeg[*b])
                    .map(|(x, y)| x + y)
                    .collect();
                let par = if self.half.par[*a] == self.half.par[*b] {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                let w = Word::Br(
                    Box::new(self.half.word[*a].clone()),
                    Box::new(self.half.word[*b].clone()),
                );
                (m, par, w)
            }
            Expr::Sq(w) => {
                let m = self.half.mdeg[*w].iter().map(|x| 2 * x).collect();
                (m, Parity::Even, Word::Sq(Box::new(self.half.word[*w].clone())))
            }
        }
    }

    /// Candidates at degree d in canonical order (forced list first if given).
    fn candidates(&self, d: usize, forced: Option<&[Expr]>) -> Vec<Expr> {
        let p = self.p();
        let mut out: Vec<Expr> = vec![];
        if let Some(f) = forced {
            out.extend(f.iter().cloned());
        }
        let has = |out: &[Expr], e: &Expr| {
            out.iter().any(|x| {
                x == e
                    || match (x, e) {
                        (Expr::Pair(a, b), Expr::Pair(c, dd)) => a == dd && b == c,
                        _ => false,
                    }
            })
        };
        if p == 2 && d % 2 == 0 {
            for &w in &self.half.by_degree[d / 2] {
                if self.half.par[w] == Parity::Odd {
                    let e = Expr::Sq(w);
                    if !has(&out, &e) {
                        out.push(e);
                    }
                }
            }
        }
        for da in 1..=d / 2 {
            let db = d - da;
            if db >= self.half.by_degree.len() {
                continue;
            }
            for &a in &self.half.by_degree[da] {
                for &b in &self.half.by_degree[db] {
                    if da == db && a > b {
                        continue;
                    }
                    if a == b && (self.half.par[a] == Parity::Even || p == 2) {
                        continue;
                    }
                    let e = Expr::Pair(a, b);
                    if !has(&out, &e) {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    /// Process degree d.  `forced`: the pivot candidates the other half chose.
    /// Returns the pivots chosen here.
    fn grow_degree(&mut self, d: usize, forced: Option<&[Expr]>) -> Result<Vec<Expr>, String> {
        let p = self.p();
        let n = self.spec.size();
        while self.half.by_degree.len() <= d {
            self.half.by_degree.push(vec![]);
        }
        let h_before = self.half.deg.len();
        let cands = self.candidates(d, forced);
        let n_forced = forced.map(|f| f.len()).unwrap_or(0);
        let mut span = Span::new(p, n * h_before);
        let mut flat: Vec<(Expr, Vec<SparseVec>, SparseVec)> = vec![];
        for c in &cands {
            let lows = self.cand_low(c);
            let mut v: SparseVec = vec![];
            for (j, lj) in lows.iter().enumerate() {
                for (u, x) in lj {
                    v.push((j * h_before + u, x.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            flat.push((c.clone(), lows, v));
        }
        let mut pivots: Vec<Expr> = vec![];
        let mut inserted: Vec<usize> = vec![]; // half index per inserted row
        for (k, (c, lows, v)) in flat.iter().enumerate() {
            let is_pivot = if span.contains(v) {
                false
            } else {
                span.insert(v);
                true
            };
            if forced.is_some() && is_pivot != (k < n_forced) {
                return Err(format!(
                    "negative half diverged from the positive half at degree {d}"
                ));
            }
            let elem: SparseVec = if is_pivot {
                let (m, par, w) = self.cand_meta(c);
                let idx = self.half.deg.len();
                self.half.deg.push(d);
                self.half.par.push(par);
                self.half.mdeg.push(m);
                self.half.expr.push(c.clone());
                self.half.word.push(w);
                self.half.by_degree[d].push(idx);
                self.half.low.push(lows.iter().map(|l| Low { half: l.clone(), torus: vec![] }).collect());
                inserted.push(idx);
                pivots.push(c.clone());
                unit(idx, p)
            } else {
                let coeffs = span
                    .solve(v)
                    .expect("dependent candidate must lie in the pivot span");
                coeffs.iter().map(|(r, c)| (inserted[*r], c.clone())).collect()
            };
            match c {
                Expr::Pair(a, b) => {
                    let s = ksign(p, self.half.par[*a], self.half.par[*b]).neg();
                    self.half.pair.insert((*b, *a), vec_scale(&elem, &s));
                    self.half.pair.insert((*a, *b), elem);
                }
                Expr::Sq(w) => {
                    if !elem.is_empty() {
                        self.half.sq.insert(*w, elem);
                    }
                }
                Expr::Gen(_) => unreachable!(),
            }
        }
        for x in &span.rref.bad_specializations {
            self.bad.insert(*x);
        }
        self.half.chosen.push(pivots.clone());
        self.half.max_degree_built = d;
        Ok(pivots)
    }

    fn max_odd_degree(&self) -> usize {
        (0..self.half.deg.len())
            .filter(|&i| self.half.par[i] == Parity::Odd)
            .map(|i| self.half.deg[i])
            .max()
            .unwrap_or(0)
    }
}

/// Result of the construction: the algebra plus the grading data needed for
/// the a-priori derivations.
pub struct GA {
    pub g: SuperAlgebra,
    /// number of Chevalley generator pairs
    pub n: usize,
    pub grading_count: usize,
    /// central combinations of the coroots, over global indices
    pub central: Vec<Element>,
    /// global indices of the adjoined grading elements
    pub grading_idx: Vec<usize>,
    /// (basis name, bracket word) for the positive half
    pub words: Vec<(String, String)>,
    pub bad_specializations: BTreeSet<u64>,
}

pub fn build_ga(spec: &CartanSpec, name: impl Into<String>) -> Result<GA, String> {
    let p = spec.p;
    let n = spec.size();
    if spec.entries.len() != n || spec.entries.iter().any(|r| r.len() != n) {
        return Err("Cartan matrix shape does not match the parity vector".into());
    }
    let mut bad = BTreeSet::new();

    // rank of A, grading-element positions, central combinations
    let mut row_span = Span::new(p, n);
    for row in &spec.entries {
        let v: SparseVec = row
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(j, e)| (j, e.clone()))
            .collect();
        row_span.insert(&v);
    }
    let rank = row_span.rank();
    let k = n - rank;
    let mut grading_pos: Vec<usize> = vec![];
    for s in 0..n {
        if row_span.rank() == n {
            break;
        }
        if span_insert_grows(&mut row_span, s, p) {
            grading_pos.push(s);
        }
    }
    for x in &row_span.rref.bad_specializations {
        bad.insert(*x);
    }
    // left kernel: kernel of A^T
    let mut at = SparseMat::new(p, n);
    for m in 0..n {
        let row: SparseVec = (0..n)
            .filter(|l| !spec.entries[*l][m].is_zero())
            .map(|l| (l, spec.entries[l][m].clone()))
            .collect();
        at.push_row(row);
    }
    let central_coeffs = kernel_basis(&at);
    if central_coeffs.len() != k {
        return Err("left kernel dimension disagrees with the corank".into());
    }

    // named words grouped by degree
    let mut words_by_degree: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for w in &spec.words {
        words_by_degree.entry(w.degree()).or_default().push(w.clone());
    }

    // grow the positive half
    let mut pos = Grower::new(spec, true);
    let mut word_index: BTreeMap<Word, usize> = BTreeMap::new();
    for i in 0..n {
        word_index.insert(Word::Gen(i), i);
    }
    let mut d = 2usize;
    let mut last_nonempty = 1usize;
    let mut degrees: Vec<usize> = vec![];
    loop {
        let horizon = (last_nonempty + 2).max(2 * pos.max_odd_degree());
        if d > horizon {
            break;
        }
        if d > spec.max_degree {
            return Err(format!(
                "growth not terminated at max_degree = {}; degree {} still pending",
                spec.max_degree, d
            ));
        }
        // forced-first list: the listing's words of this degree
        let named: Vec<Expr> = match words_by_degree.get(&d) {
            None => vec![],
            Some(ws) => {
                let mut out = vec![];
                for w in ws {
                    out.push(word_to_expr(w, &word_index)?);
                }
                out
            }
        };
        let before = pos.half.deg.len();
        let named_opt = if named.is_empty() { None } else { Some(named.as_slice()) };
        let pivots = pos.grow_degree(d, named_opt)?;
        if let Some(ws) = words_by_degree.get(&d) {
            if pivots.len() < ws.len()
                || (0..ws.len()).any(|i| word_to_expr(&ws[i], &word_index).map(|e| e != pivots[i]).unwrap_or(true))
            {
                return Err(format!("listed word basis is dependent at degree {d}"));
            }
        }
        for idx in before..pos.half.deg.len() {
            word_index.insert(pos.half.word[idx].clone(), idx);
        }
        if pos.half.deg.len() > before {
            last_nonempty = d;
        }
        degrees.push(d);
        d += 1;
    }
    for x in &pos.bad {
        bad.insert(*x);
    }

    // mirror onto the negative half
    let mut neg = Grower::new(spec, false);
    for (i, &dd) in degrees.iter().enumerate() {
        neg.grow_degree(dd, Some(&pos.half.chosen[i]))?;
    }
    for x in &neg.bad {
        bad.insert(*x);
    }

    // assemble
    let nh = pos.half.deg.len();
    let tor = n + k;
    let dim = 2 * nh + tor;
    let x_off = 0usize;
    let t_off = nh;
    let y_off = nh + tor;
    let mut basis = vec![];
    for i in 0..nh {
        let nm = format!("x{}", i + 1);
        basis.push(
            BasisElement::new(nm, pos.half.par[i], pos.half.deg[i] as i64)
                .with_weight(pos.half.mdeg[i].clone()),
        );
    }
    for l in 0..tor {
        basis.push(BasisElement::new(format!("h{}", l + 1), Parity::Even, 0).with_weight(vec![0; n]));
    }
    for i in 0..nh {
        let nm = format!("y{}", i + 1);
        basis.push(
            BasisElement::new(nm, neg.half.par[i], -(neg.half.deg[i] as i64))
                .with_weight(neg.half.mdeg[i].iter().map(|x| -x).collect()),
        );
    }
    let mut g = SuperAlgebra::new(name, p, basis);
    g.torus = (t_off..t_off + tor).collect();

    let mut asm = Assembler {
        spec,
        pos: &pos.half,
        neg: &neg.half,
        grading_pos: &grading_pos,
        n,
        tor,
        x_off,
        t_off,
        y_off,
        memo: BTreeMap::new(),
    };
    for i in 0..dim {
        for j in i..dim {
            if i == j {
                if p == 2 {
                    continue;
                }
                let v = asm.gbracket(i, i);
                g.set_bracket(i, i, v);
                continue;
            }
            let v = asm.gbracket(i, j);
            g.set_bracket(i, j, v);
        }
    }
    if p == 2 {
        for (w, v) in &pos.half.sq {
            g.set_square(x_off + w, v.iter().map(|(u, c)| (x_off + u, c.clone())).collect());
        }
        for (w, v) in &neg.half.sq {
            g.set_square(y_off + w, v.iter().map(|(u, c)| (y_off + u, c.clone())).collect());
        }
    }

    let central: Vec<Element> = central_coeffs
        .iter()
        .map(|kv| kv.iter().map(|(l, c)| (t_off + l, c.clone())).collect())
        .collect();
    let grading_idx: Vec<usize> = (0..k).map(|j| t_off + n + j).collect();
    let words: Vec<(String, String)> = (0..nh)
        .map(|i| (format!("x{}", i + 1), pos.half.word[i].render('x')))
        .collect();
    Ok(GA {
        g,
        n,
        grading_count: k,
        central,
        grading_idx,
        words,
        bad_specializations: bad,
    })
}

fn span_insert_grows(span: &mut Span, s: usize, p: u32) -> bool {
    let v = unit(s, p);
    if span.contains(&v) {
        false
    } else {
        span.insert(&v);
        true
    }
}

fn word_to_expr(w: &Word, index: &BTreeMap<Word, usize>) -> Result<Expr, String> {
    match w {
        Word::Gen(_) => Err("a generator is not a composite word".into()),
        Word::Br(a, b) => {
            let ia = index
                .get(a.as_ref())
                .ok_or_else(|| format!("subword {} is not a basis element", a.render('x')))?;
            let ib = index
                .get(b.as_ref())
                .ok_or_else(|| format!("subword {} is not a basis element", b.render('x')))?;
            Ok(Expr::Pair(*ia, *ib))
        }
        Word::Sq(a) => {
            let ia = index
                .get(a.as_ref())
                .ok_or_else(|| format!("subword {} is not a basis element", a.render('x')))?;
            Ok(Expr::Sq(*ia))
        }
    }
}

struct Assembler<'a> {
    spec: &'a CartanSpec,
    pos: &'a Half,
    neg: &'a Half,
    grading_pos: &'a [usize],
    n: usize,
    tor: usize,
    x_off: usize,
    t_off: usize,
    y_off: usize,
    memo: BTreeMap<(usize, usize), Element>,
}

enum Cat {
    Pos(usize),
    Tor(usize),
    Neg(usize),
}

impl<'a> Assembler<'a> {
    fn p(&self) -> u32 {
        self.spec.p
    }

    fn cat(&self, i: usize) -> Cat {
        if i < self.t_off {
            Cat::Pos(i - self.x_off)
        } else if i < self.y_off {
            Cat::Tor(i - self.t_off)
        } else {
            Cat::Neg(i - self.y_off)
        }
    }

    fn parity(&self, i: usize) -> Parity {
        match self.cat(i) {
            Cat::Pos(w) => self.pos.par[w],
            Cat::Tor(_) => Parity::Even,
            Cat::Neg(w) => self.neg.par[w],
        }
    }

    /// Eigenvalue of torus element l (coroot or grading) on multidegree m.
    fn teig(&self, l: usize, m: &[i64]) -> K {
        let p = self.p();
        if l < self.n {
            let mut acc = K::zero(p);
            for (j, &mu) in m.iter().enumerate() {
                acc = acc.add(&self.spec.entries[l][j].mul(&K::fp(mu, p)));
            }
            acc
        } else {
            K::fp(m[self.grading_pos[l - self.n]], p)
        }
    }

    fn map_half(&self, v: &SparseVec, off: usize) -> Element {
        v.iter().map(|(u, c)| (off + u, c.clone())).collect()
    }

    fn gbracket(&mut self, i: usize, j: usize) -> Element {
        if let Some(v) = self.memo.get(&(i, j)) {
            return v.clone();
        }
        let p = self.p();
        let v: Element = match (self.cat(i), self.cat(j)) {
            (Cat::Tor(_), Cat::Tor(_)) => vec![],
            (Cat::Tor(l), Cat::Pos(w)) => {
                let e = self.teig(l, &self.pos.mdeg[w]);
                vec_scale(&unit(self.x_off + w, p), &e)
            }
            (Cat::Tor(l), Cat::Neg(w)) => {
                let e = self.teig(l, &self.neg.mdeg[w]).neg();
                vec_scale(&unit(self.y_off + w, p), &e)
            }
            (Cat::Pos(_), Cat::Tor(_)) | (Cat::Neg(_), Cat::Tor(_)) => {
                // torus is even: [e, h] = -[h, e]
                vec_scale(&self.gbracket(j, i), &K::fp(-1, p))
            }
            (Cat::Pos(a), Cat::Pos(b)) => {
                if a == b && (self.pos.par[a] == Parity::Even || p == 2) {
                    vec![]
                } else if self.pos.deg[a] + self.pos.deg[b] > self.pos.max_degree_built {
                    // past the last constructed degree the half is zero
                    vec![]
                } else {
                    self.map_half(&self.pos.pair[&(a, b)].clone(), self.x_off)
                }
            }
            (Cat::Neg(a), Cat::Neg(b)) => {
                if a == b && (self.neg.par[a] == Parity::Even || p == 2) {
                    vec![]
                } else if self.neg.deg[a] + self.neg.deg[b] > self.neg.max_degree_built {
                    vec![]
                } else {
                    self.map_half(&self.neg.pair[&(a, b)].clone(), self.y_off)
                }
            }
            (Cat::Neg(a), Cat::Pos(b)) => self.mixed(a, b),
            (Cat::Pos(b), Cat::Neg(a)) => {
                let s = ksign(p, self.pos.par[b], self.neg.par[a]).neg();
                let v = self.mixed(a, b);
                vec_scale(&v, &s)
            }
        };
        self.memo.insert((i, j), v.clone());
        v
    }

    fn elem_bracket(&mut self, e1: &Element, e2: &Element) -> Element {
        let mut out: Element = vec![];
        for (i, c1) in e1 {
            for (j, c2) in e2.clone() {
                let v = self.gbracket(*i, j);
                out = vec_add_scaled(&out, &v, &c1.mul(&c2));
            }
        }
        out
    }

    /// [y_a, x_b] over global indices.
    fn mixed(&mut self, a: usize, b: usize) -> Element {
        let p = self.p();
        if self.pos.deg[b] >= 2 {
            let ya = unit(self.y_off + a, p);
            return match self.pos.expr[b].clone() {
                Expr::Pair(u, v) => {
                    // [a, [u, v]] = [[a, u], v] + (-1)^{p_a p_u} [u, [a, v]]
                    let au = self.gbracket(self.y_off + a, self.x_off + u);
                    let t1 = self.elem_bracket(&au, &unit(self.x_off + v, p));
                    let av = self.gbracket(self.y_off + a, self.x_off + v);
                    let t2 = self.elem_bracket(&unit(self.x_off + u, p), &av);
                    let s = ksign(p, self.neg.par[a], self.pos.par[u]);
                    vec_add_scaled(&t1, &t2, &s)
                }
                Expr::Sq(u) => {
                    // p = 2: [s(u), a] = [u, [u, a]]
                    let ua = self.elem_bracket(&unit(self.x_off + u, p), &ya);
                    self.elem_bracket(&unit(self.x_off + u, p), &ua)
                }
                Expr::Gen(_) => unreachable!(),
            };
        }
        if self.neg.deg[a] >= 2 {
            let xb = unit(self.x_off + b, p);
            return match self.neg.expr[a].clone() {
                Expr::Pair(u, v) => {
                    // [[u, v], c] = [u, [v, c]] - (-1)^{p_u p_v} [v, [u, c]]
                    let vc = self.gbracket(self.y_off + v, self.x_off + b);
                    let t1 = self.elem_bracket(&unit(self.y_off + u, p), &vc);
                    let uc = self.gbracket(self.y_off + u, self.x_off + b);
                    let t2 = self.elem_bracket(&unit(self.y_off + v, p), &uc);
                    let s = ksign(p, self.neg.par[u], self.neg.par[v]).neg();
                    vec_add_scaled(&t1, &t2, &s)
                }
                Expr::Sq(u) => {
                    let uc = self.gbracket(self.y_off + u, self.x_off + b);
                    self.elem_bracket(&unit(self.y_off + u, p), &uc)
                }
                Expr::Gen(_) => unreachable!(),
            };
        }
        // both are generators
        if a == b {
            // [y_i, x_i] = -(-1)^{p_i} h_i
            let c = ksign(p, self.neg.par[a], self.neg.par[a]).neg();
            vec![(self.t_off + a, c)]
        } else {
            vec![]
        }
    }
}

/// The k central combinations C_i and the global indices of the grading
/// elements D_j adjoined for a degenerate matrix.
pub fn grading_and_central_elements(ga: &GA) -> (Vec<Element>, Vec<usize>) {
    (ga.central.clone(), ga.grading_idx.clone())
}

/// The k^2 derivations C_i (x) d(D_j): they kill the derived subalgebra and
/// send the grading element D_j to the central combination C_i.
pub fn apriori_derivations(ga: &GA) -> Vec<Cochain> {
    let mut out = vec![];
    for ci in &ga.central {
        for &dj in &ga.grading_idx {
            let mut c = Cochain::new(1, Coeffs::Adjoint);
            for (l, coeff) in ci {
                c.add_term(&ga.g, Some(*l), &[dj], coeff.clone());
            }
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{h1_adjoint, verify_cocycle};

    #[test]
    fn sl2_rank_one() {
        let spec = CartanSpec::new(5, &[vec![2]], &[Parity::Even]);
        let ga = build_ga(&spec, "sl(2)").unwrap();
        assert_eq!(ga.g.dim(), 3);
        assert_eq!(ga.grading_count, 0);
        ga.g.validate().unwrap();
        let x = ga.g.index_of("x1").unwrap();
        let y = ga.g.index_of("y1").unwrap();
        let h = ga.g.index_of("h1").unwrap();
        assert_eq!(ga.g.bracket_basis(x, y), unit(h, 5));
        assert!(apriori_derivations(&ga).is_empty());
    }

    #[test]
    fn osp12_from_odd_rank_one() {
        // A = (1), odd generator: x2 = [x1, x1]
        for p in [3u32, 5] {
            let spec = CartanSpec::new(p, &[vec![1]], &[Parity::Odd]);
            let ga = build_ga(&spec, "osp(1|2)").unwrap();
            assert_eq!(ga.g.superdim(), (3, 2));
            ga.g.validate().unwrap();
            assert_eq!(ga.words[1], ("x2".into(), "[x1,x1]".into()));
        }
    }

    #[test]
    fn rank_one_p2_even_and_odd() {
        // (1) with even generator: o_Pi^(1)(3), dim 3
        let spec = CartanSpec::new(2, &[vec![1]], &[Parity::Even]);
        let ga = build_ga(&spec, "o_Pi^(1)(3)").unwrap();
        assert_eq!(ga.g.dim(), 3);
        ga.g.validate().unwrap();
        // (1) with odd generator: oo_IPi(1|2), sdim (3|2), x2 = x1^2
        let spec = CartanSpec::new(2, &[vec![1]], &[Parity::Odd]);
        let ga = build_ga(&spec, "oo_IPi(1|2)").unwrap();
        assert_eq!(ga.g.superdim(), (3, 2));
        ga.g.validate().unwrap();
        let x1 = ga.g.index_of("x1").unwrap();
        let x2 = ga.g.index_of("x2").unwrap();
        assert_eq!(ga.g.square_basis(x1), unit(x2, 2));
    }

    #[test]
    fn gl3_at_p3_grading_and_derivation() {
        let spec = CartanSpec::new(3, &[vec![2, -1], vec![-1, 2]], &[Parity::Even; 2]);
        let ga = build_ga(&spec, "gl(3)").unwrap();
        assert_eq!(ga.g.dim(), 9);
        assert_eq!(ga.grading_count, 1);
        ga.g.validate().unwrap();
        let (c, d) = grading_and_central_elements(&ga);
        assert_eq!(c.len(), 1);
        assert_eq!(d.len(), 1);
        // central combination h1 + 2 h2, up to scalar
        let h1 = ga.g.index_of("h1").unwrap();
        let h2 = ga.g.index_of("h2").unwrap();
        let cc = &c[0];
        assert_eq!(cc.len(), 2);
        let r1 = cc.iter().find(|(i, _)| *i == h1).unwrap().1.clone();
        let r2 = cc.iter().find(|(i, _)| *i == h2).unwrap().1.clone();
        assert_eq!(r2, r1.mul(&K::fp(2, 3)));
        for e in &c {
            for b in 0..ga.g.dim() {
                assert!(crate::linalg::vec_is_zero(&ga.g.bracket(e, &unit(b, 3))));
            }
        }
        // the a-priori derivation is a cocycle and not a coboundary,
        // and H1 itself is 1-dimensional
        let ders = apriori_derivations(&ga);
        assert_eq!(ders.len(), 1);
        let v = verify_cocycle(&ga.g, &ders[0]).unwrap();
        assert!(v.is_cocycle && !v.is_coboundary);
        let h = h1_adjoint(&ga.g, crate::cohomology::H1Options::default());
        assert_eq!(h.report.total_dim, 1);
    }

    #[test]
    fn gl4_at_p2_derivation() {
        let spec = CartanSpec::new(
            2,
            &[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
            &[Parity::Even; 3],
        );
        let ga = build_ga(&spec, "gl(4)").unwrap();
        assert_eq!(ga.g.dim(), 16);
        assert_eq!(ga.grading_count, 1);
        ga.g.validate().unwrap();
        let ders = apriori_derivations(&ga);
        assert_eq!(ders.len(), 1);
        let v = verify_cocycle(&ga.g, &ders[0]).unwrap();
        assert!(v.is_cocycle && !v.is_coboundary);
        // c0 = h1 (x) dh4 + h3 (x) dh4: the central combination is h1 + h3
        let h1 = ga.g.index_of("h1").unwrap();
        let h3 = ga.g.index_of("h3").unwrap();
        let cc = &ga.central[0];
        assert_eq!(cc.len(), 2);
        assert!(cc.iter().any(|(i, _)| *i == h1) && cc.iter().any(|(i, _)| *i == h3));
        // derived + center quotient: psl(4), dim 14
        let d1 = ga.g.derived_subalgebra();
        assert_eq!(d1.dim(), 15);
        let q = d1.quotient(&d1.center(), "psl(4)");
        assert_eq!(q.dim(), 14);
        q.validate().unwrap();
    }

    #[test]
    fn brj23_word_basis() {
        let spec = CartanSpec::new(3, &[vec![0, -1], vec![-2, 1]], &[Parity::Odd; 2])
            .with_words(&[
                "[x_1, x_2]",
                "[x_2, x_2]",
                "[x_2, [x_1, x_2]]",
                "[[x_1, x_2], [x_2, x_2]]",
                "[[x_2, x_2], [x_2, [x_1, x_2]]]",
                "[[x_2, [x_1, x_2]], [x_2, [x_1, x_2]]]",
            ])
            .unwrap();
        let ga = build_ga(&spec, "brj(2;3)").unwrap();
        assert_eq!(ga.g.dim(), 18);
        assert_eq!(ga.g.superdim(), (10, 8));
        assert_eq!(ga.words.len(), 8);
        ga.g.validate().unwrap();
    }

    #[test]
    fn wk3a_symbolic() {
        let spec = CartanSpec::from_tokens(
            2,
            &[
                vec!["ev", "a", "0"],
                vec!["a", "ev", "1"],
                vec!["0", "1", "ev"],
            ],
            &[Parity::Even; 3],
        )
        .unwrap()
        .with_words(&[
            "[x_1, x_2]",
            "[x_2, x_3]",
            "[x_3, [x_1, x_2]]",
            "[[x_1, x_2], [x_2, x_3]]",
        ])
        .unwrap();
        let ga = build_ga(&spec, "wk(3;a)").unwrap();
        assert_eq!(ga.g.dim(), 18);
        assert_eq!(ga.grading_count, 1);
        ga.g.validate().unwrap();
        // the excluded specialization a = 0 shows up in the pairing pivots
        assert!(ga.bad_specializations.contains(&0));
    }

    #[test]
    fn depth_exhaustion_is_an_error() {
        // affine A_1 matrix: infinite growth
        let mut spec = CartanSpec::new(5, &[vec![2, -2], vec![-2, 2]], &[Parity::Even; 2]);
        spec.max_degree = 6;
        let err = match build_ga(&spec, "affine") {
            Err(e) => e,
            Ok(_) => panic!("expected depth exhaustion"),
        };
        assert!(err.contains("not terminated"));
    }
}
