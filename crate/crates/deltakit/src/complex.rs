//! Finite delta-complexes and their cochain complexes.
//!
//! A complex stores, per dimension, a list of simplices; every n-simplex
//! (n >= 1) carries an ordered list of n+1 faces referring to (n-1)-simplices.
//! The boundary of a simplex is the alternating sum of its ordered faces.
//! Simplices have stable string identifiers that the text formats use.

use crate::exactalg::mixed::{MixedComplex, MixedDiff, MixedModule, MixedVec};
use crate::exactalg::{IntComplex, IntMatrix, RatMatrix};
use crate::scalar::{mod_one, rat_of, Int, Rat};
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("simplex {id}: {msg}")]
    Invalid { id: String, msg: String },
    #[error("unknown standard space `{0}`")]
    UnknownSpace(String),
    #[error("degree {0} out of range")]
    Degree(usize),
    #[error("{0}")]
    Mismatch(String),
}

/// Coefficient ring tag for cochains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Int,
    Rat,
    RatModZ,
}

impl Ring {
    pub fn label(self) -> &'static str {
        match self {
            Ring::Int => "Z",
            Ring::Rat => "Q",
            Ring::RatModZ => "QZ",
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "Z" => Some(Ring::Int),
            "Q" => Some(Ring::Rat),
            "QZ" => Some(Ring::RatModZ),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Dimension {
    ids: Vec<String>,
    /// faces[i] lists the indices (into the previous dimension) of the
    /// ordered faces of simplex i; empty in dimension 0
    faces: Vec<Vec<usize>>,
}

/// A finite delta-complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    dims: Vec<Dimension>,
    index: HashMap<String, (usize, usize)>,
}

impl DeltaComplex {
    /// Build from (id, faces) declarations grouped by dimension; validates
    /// face references, the simplicial identities, and boundary-of-boundary.
    pub fn new(declarations: Vec<(String, Vec<String>)>) -> Result<Arc<Self>, ComplexError> {
        let mut dims: Vec<Dimension> = Vec::new();
        let mut index: HashMap<String, (usize, usize)> = HashMap::new();
        for (id, face_ids) in declarations {
            if index.contains_key(&id) {
                return Err(ComplexError::Invalid {
                    id,
                    msg: "duplicate identifier".into(),
                });
            }
            let dim = if face_ids.is_empty() {
                0
            } else {
                let first = index
                    .get(&face_ids[0])
                    .ok_or_else(|| ComplexError::Invalid {
                        id: id.clone(),
                        msg: format!("unknown face `{}`", face_ids[0]),
                    })?;
                first.0 + 1
            };
            if face_ids.len() != if dim == 0 { 0 } else { dim + 1 } {
                return Err(ComplexError::Invalid {
                    id,
                    msg: format!("an n-simplex needs n+1 faces, got {}", face_ids.len()),
                });
            }
            let mut faces = Vec::new();
            for fid in &face_ids {
                let &(fdim, fidx) = index.get(fid).ok_or_else(|| ComplexError::Invalid {
                    id: id.clone(),
                    msg: format!("unknown face `{fid}`"),
                })?;
                if fdim + 1 != dim {
                    return Err(ComplexError::Invalid {
                        id: id.clone(),
                        msg: format!("face `{fid}` has dimension {fdim}, expected {}", dim - 1),
                    });
                }
                faces.push(fidx);
            }
            while dims.len() <= dim {
                dims.push(Dimension {
                    ids: Vec::new(),
                    faces: Vec::new(),
                });
            }
            index.insert(id.clone(), (dim, dims[dim].ids.len()));
            dims[dim].ids.push(id);
            dims[dim].faces.push(faces);
        }
        let complex = DeltaComplex { dims, index };
        complex.check_simplicial_identities()?;
        Ok(Arc::new(complex))
    }

    fn check_simplicial_identities(&self) -> Result<(), ComplexError> {
        // face_i(face_j s) = face_{j-1}(face_i s) for i < j
        for n in 2..self.dims.len() {
            for (s, faces) in self.dims[n].faces.iter().enumerate() {
                for j in 0..faces.len() {
                    for i in 0..j {
                        let fj = &self.dims[n - 1].faces[faces[j]];
                        let fi = &self.dims[n - 1].faces[faces[i]];
                        if fj[i] != fi[j - 1] {
                            return Err(ComplexError::Invalid {
                                id: self.dims[n].ids[s].clone(),
                                msg: format!("simplicial identity fails at faces {i} < {j}"),
                            });
                        }
                    }
                }
            }
        }
        // boundary of boundary = 0, as matrices
        for n in 2..self.dims.len() {
            let b_n = self.boundary_matrix(n);
            let b_n1 = self.boundary_matrix(n - 1);
            if !b_n1.mul(&b_n).is_zero() {
                return Err(ComplexError::Invalid {
                    id: format!("dimension {n}"),
                    msg: "boundary of boundary is nonzero".into(),
                });
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn size(&self, n: usize) -> usize {
        self.dims.get(n).map_or(0, |d| d.ids.len())
    }

    pub fn simplex_id(&self, n: usize, idx: usize) -> &str {
        &self.dims[n].ids[idx]
    }

    pub fn lookup(&self, id: &str) -> Option<(usize, usize)> {
        self.index.get(id).copied()
    }

    pub fn faces(&self, n: usize, idx: usize) -> &[usize] {
        &self.dims[n].faces[idx]
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dimension())
            .map(|n| {
                let c = self.size(n) as i64;
                if n % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Boundary matrix C_n -> C_{n-1}: column per n-simplex, alternating
    /// signs on its ordered faces.
    pub fn boundary_matrix(&self, n: usize) -> IntMatrix {
        if n == 0 || n > self.dimension() {
            return IntMatrix::zero(if n == 0 { 0 } else { self.size(n - 1) }, self.size(n));
        }
        let mut m = IntMatrix::zero(self.size(n - 1), self.size(n));
        for (j, faces) in self.dims[n].faces.iter().enumerate() {
            for (i, &f) in faces.iter().enumerate() {
                let sign = if i % 2 == 0 {
                    Int::from(1)
                } else {
                    Int::from(-1)
                };
                let v = m.at(f, j) + sign;
                m.set(f, j, v);
            }
        }
        m
    }

    /// Coboundary matrix C^n -> C^{n+1} (transpose of the boundary).
    pub fn coboundary_matrix(&self, n: usize) -> IntMatrix {
        self.boundary_matrix(n + 1).transpose()
    }

    /// The integral cochain complex 0 -> C^0 -> ... -> C^dim -> 0.
    pub fn int_cochain_complex(&self) -> IntComplex {
        let diffs = (0..=self.dimension())
            .map(|n| self.coboundary_matrix(n))
            .collect();
        IntComplex { diffs }
    }

    /// The cochain complex packed as a mixed complex over Z or Q.
    pub fn mixed_cochain_complex(&self, ring: Ring) -> MixedComplex {
        assert!(
            matches!(ring, Ring::Int | Ring::Rat),
            "mixed complex over Z or Q"
        );
        let top = self.dimension();
        let modules: Vec<MixedModule> = (0..=top + 1)
            .map(|n| match ring {
                Ring::Int => MixedModule {
                    int_rank: self.size(n),
                    rat_rank: 0,
                },
                _ => MixedModule {
                    int_rank: 0,
                    rat_rank: self.size(n),
                },
            })
            .collect();
        let diffs = (0..=top)
            .map(|n| {
                let d = self.coboundary_matrix(n);
                match ring {
                    Ring::Int => MixedDiff {
                        a: d,
                        b: RatMatrix::zero(0, self.size(n)),
                        c: RatMatrix::zero(0, 0),
                    },
                    _ => MixedDiff {
                        a: IntMatrix::zero(0, 0),
                        b: RatMatrix::zero(d.rows, 0),
                        c: d.to_rat(),
                    },
                }
            })
            .collect();
        MixedComplex { modules, diffs }
    }
}

/// View a cochain as a vector in the matching mixed complex.
pub fn cochain_to_mixed(x: &Cochain) -> MixedVec {
    match x.ring {
        Ring::Int => MixedVec {
            degree: x.degree,
            int_part: x.values.iter().map(|v| v.to_integer()).collect(),
            rat_part: Vec::new(),
        },
        Ring::Rat => MixedVec {
            degree: x.degree,
            int_part: Vec::new(),
            rat_part: x.values.clone(),
        },
        Ring::RatModZ => panic!("Q/Z cochains have no mixed-complex counterpart"),
    }
}

/// Rebuild a cochain from mixed coordinates.
pub fn mixed_to_cochain(complex: &Arc<DeltaComplex>, ring: Ring, v: &MixedVec) -> Cochain {
    let values: Vec<Rat> = match ring {
        Ring::Int => v.int_part.iter().map(rat_of).collect(),
        _ => v.rat_part.clone(),
    };
    Cochain::from_values(complex, v.degree, ring, values).expect("mixed vector shape")
}

/// A cochain on a delta-complex: one value per n-simplex.
///
/// Values are stored as rationals for every ring; Int cochains keep integral
/// entries and RatModZ cochains keep canonical representatives in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub complex: Arc<DeltaComplex>,
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<Rat>,
}

impl Cochain {
    pub fn zero(complex: &Arc<DeltaComplex>, degree: usize, ring: Ring) -> Self {
        Cochain {
            complex: Arc::clone(complex),
            degree,
            ring,
            values: vec![Rat::zero(); complex.size(degree)],
        }
    }

    pub fn from_values(
        complex: &Arc<DeltaComplex>,
        degree: usize,
        ring: Ring,
        values: Vec<Rat>,
    ) -> Result<Self, ComplexError> {
        if values.len() != complex.size(degree) {
            return Err(ComplexError::Mismatch(format!(
                "cochain length {} vs {} simplices in dimension {degree}",
                values.len(),
                complex.size(degree)
            )));
        }
        let values = match ring {
            Ring::Int => {
                for v in &values {
                    if !crate::scalar::is_integer(v) {
                        return Err(ComplexError::Mismatch(format!(
                            "non-integer value {v} in a Z-cochain"
                        )));
                    }
                }
                values
            }
            Ring::Rat => values,
            Ring::RatModZ => values.iter().map(mod_one).collect(),
        };
        Ok(Cochain {
            complex: Arc::clone(complex),
            degree,
            ring,
            values,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn value(&self, idx: usize) -> &Rat {
        &self.values[idx]
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_compatible(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Cochain::from_values(&self.complex, self.degree, self.ring, values).unwrap()
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.check_compatible(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Cochain::from_values(&self.complex, self.degree, self.ring, values).unwrap()
    }

    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|a| -a.clone()).collect();
        Cochain::from_values(&self.complex, self.degree, self.ring, values).unwrap()
    }

    fn check_compatible(&self, other: &Cochain) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.complex, other.complex, "different complexes");
    }

    /// Reinterpret in another ring (Z into Q, Q into Q/Z, ...).
    pub fn with_ring(&self, ring: Ring) -> Result<Cochain, ComplexError> {
        Cochain::from_values(&self.complex, self.degree, ring, self.values.clone())
    }
}

/// Coboundary: (dx)(s) = sum_i (-1)^i x(face_i s).
pub fn coboundary(x: &Cochain) -> Result<Cochain, ComplexError> {
    let n = x.degree;
    let next = x.complex.size(n + 1);
    let mut values = vec![Rat::zero(); next];
    for j in 0..next {
        let faces = x.complex.faces(n + 1, j);
        let mut acc = Rat::zero();
        for (i, &f) in faces.iter().enumerate() {
            if i % 2 == 0 {
                acc += x.value(f);
            } else {
                acc -= x.value(f);
            }
        }
        values[j] = acc;
    }
    Cochain::from_values(&x.complex, n + 1, x.ring, values)
}

pub fn is_cocycle(x: &Cochain) -> bool {
    coboundary(x).map(|d| d.is_zero()).unwrap_or(false)
}

/// A formal integer combination of n-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub complex: Arc<DeltaComplex>,
    pub degree: usize,
    pub coeffs: Vec<Int>,
}

impl Chain {
    pub fn zero(complex: &Arc<DeltaComplex>, degree: usize) -> Self {
        Chain {
            complex: Arc::clone(complex),
            degree,
            coeffs: vec![Int::zero(); complex.size(degree)],
        }
    }

    pub fn from_coeffs(complex: &Arc<DeltaComplex>, degree: usize, coeffs: Vec<Int>) -> Self {
        assert_eq!(coeffs.len(), complex.size(degree), "chain length");
        Chain {
            complex: Arc::clone(complex),
            degree,
            coeffs,
        }
    }

    pub fn single(complex: &Arc<DeltaComplex>, id: &str) -> Option<Self> {
        let (dim, idx) = complex.lookup(id)?;
        let mut c = Chain::zero(complex, dim);
        c.coeffs[idx] = Int::from(1);
        Some(c)
    }

    pub fn boundary(&self) -> Chain {
        if self.degree == 0 {
            return Chain {
                complex: Arc::clone(&self.complex),
                degree: 0,
                coeffs: Vec::new(),
            };
        }
        let b = self.complex.boundary_matrix(self.degree);
        Chain {
            complex: Arc::clone(&self.complex),
            degree: self.degree - 1,
            coeffs: b.mul_vec(&self.coeffs),
        }
    }

    pub fn is_cycle(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        self.boundary().coeffs.iter().all(|c| c.is_zero())
    }
}

/// Pairing of a cochain with a chain of the same degree; value in the
/// cochain's ring (mod 1 for Q/Z).
pub fn evaluate(x: &Cochain, z: &Chain) -> Result<Rat, ComplexError> {
    if x.degree != z.degree {
        return Err(ComplexError::Mismatch(format!(
            "evaluate: cochain degree {} vs chain degree {}",
            x.degree, z.degree
        )));
    }
    if x.complex != z.complex {
        return Err(ComplexError::Mismatch(
            "evaluate: different complexes".into(),
        ));
    }
    let mut acc = Rat::zero();
    for (v, c) in x.values.iter().zip(&z.coeffs) {
        acc += v * rat_of(c);
    }
    Ok(match x.ring {
        Ring::RatModZ => mod_one(&acc),
        _ => acc,
    })
}

/// Named standard spaces used as fixtures everywhere.
pub fn standard_space(name: &str) -> Result<Arc<DeltaComplex>, ComplexError> {
    let decl: Vec<(&str, Vec<&str>)> = match name {
        "point" => vec![("v0", vec![])],
        "interval" => vec![("v0", vec![]), ("v1", vec![]), ("e01", vec!["v1", "v0"])],
        "circle_3" => vec![
            ("v0", vec![]),
            ("v1", vec![]),
            ("v2", vec![]),
            ("e01", vec!["v1", "v0"]),
            ("e12", vec!["v2", "v1"]),
            ("e20", vec!["v0", "v2"]),
        ],
        "torus_min" => vec![
            ("v", vec![]),
            ("a", vec!["v", "v"]),
            ("b", vec!["v", "v"]),
            ("c", vec!["v", "v"]),
            // both triangles have boundary a + b - c
            ("U", vec!["b", "c", "a"]),
            ("L", vec!["a", "c", "b"]),
        ],
        "rp2_min" => vec![
            ("v0", vec![]),
            ("v1", vec![]),
            ("a", vec!["v1", "v0"]),
            ("b", vec!["v1", "v0"]),
            ("c", vec!["v0", "v0"]),
            // boundaries b - a + c and a - b + c
            ("T1", vec!["b", "a", "c"]),
            ("T2", vec!["a", "b", "c"]),
        ],
        "sphere_octahedron" => {
            let verts = ["v0", "v1", "v2", "v3", "v4", "v5"];
            let edges: Vec<(usize, usize)> = vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (1, 4),
                (1, 5),
                (2, 5),
                (3, 5),
                (4, 5),
            ];
            let tris: Vec<(usize, usize, usize)> = vec![
                (0, 1, 2),
                (0, 2, 3),
                (0, 3, 4),
                (0, 1, 4),
                (1, 2, 5),
                (2, 3, 5),
                (3, 4, 5),
                (1, 4, 5),
            ];
            let mut decl: Vec<(String, Vec<String>)> =
                verts.iter().map(|v| (v.to_string(), vec![])).collect();
            let ename = |a: usize, b: usize| format!("e{a}{b}");
            for &(a, b) in &edges {
                decl.push((ename(a, b), vec![format!("v{b}"), format!("v{a}")]));
            }
            for &(a, b, c) in &tris {
                // faces of [a,b,c]: [b,c], [a,c], [a,b]
                decl.push((
                    format!("t{a}{b}{c}"),
                    vec![ename(b, c), ename(a, c), ename(a, b)],
                ));
            }
            return DeltaComplex::new(decl);
        }
        other => return Err(ComplexError::UnknownSpace(other.to_string())),
    };
    DeltaComplex::new(
        decl.into_iter()
            .map(|(id, faces)| {
                (
                    id.to_string(),
                    faces.into_iter().map(String::from).collect(),
                )
            })
            .collect(),
    )
}

/// Parse the delta-complex text format: `simplex <id>` declares a vertex,
/// `simplex <id> : <face> <face> ...` declares a higher simplex. `#` starts
/// a comment.
pub fn parse_complex(text: &str) -> Result<Arc<DeltaComplex>, ComplexError> {
    let mut decl = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| ComplexError::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let rest = line
            .strip_prefix("simplex")
            .ok_or_else(|| err("expected `simplex <id> [: <faces>]`"))?
            .trim();
        let (id, faces) = match rest.split_once(':') {
            None => (rest.trim().to_string(), Vec::new()),
            Some((id, faces)) => (
                id.trim().to_string(),
                faces.split_whitespace().map(String::from).collect(),
            ),
        };
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(err("simplex identifier must be a single word"));
        }
        decl.push((id, faces));
    }
    DeltaComplex::new(decl)
}

pub fn serialize_complex(complex: &DeltaComplex) -> String {
    let mut out = String::new();
    for n in 0..=complex.dimension() {
        for idx in 0..complex.size(n) {
            if n == 0 {
                out.push_str(&format!("simplex {}\n", complex.simplex_id(0, idx)));
            } else {
                let faces: Vec<&str> = complex
                    .faces(n, idx)
                    .iter()
                    .map(|&f| complex.simplex_id(n - 1, f))
                    .collect();
                out.push_str(&format!(
                    "simplex {} : {}\n",
                    complex.simplex_id(n, idx),
                    faces.join(" ")
                ));
            }
        }
    }
    out
}

/// Parse the cochain text format: first line `degree <n> ring <Z|Q|QZ>`,
/// then `<simplex_id> = <rational>` lines. Unlisted simplices are zero.
pub fn parse_cochain(text: &str, complex: &Arc<DeltaComplex>) -> Result<Cochain, ComplexError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim().to_string()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(ComplexError::Parse {
        line: 1,
        msg: "empty cochain file".into(),
    })?;
    let herr = |msg: &str| ComplexError::Parse {
        line: hline,
        msg: msg.to_string(),
    };
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "degree" || parts[2] != "ring" {
        return Err(herr("expected `degree <n> ring <Z|Q|QZ>`"));
    }
    let degree: usize = parts[1].parse().map_err(|_| herr("bad degree"))?;
    let ring = Ring::parse(parts[3]).ok_or_else(|| herr("ring must be Z, Q, or QZ"))?;
    let mut values = vec![Rat::zero(); complex.size(degree)];
    for (lineno, line) in lines {
        let err = |msg: String| ComplexError::Parse { line: lineno, msg };
        let (id, val) = line
            .split_once('=')
            .ok_or_else(|| err("expected `<simplex_id> = <rational>`".into()))?;
        let id = id.trim();
        let (dim, idx) = complex
            .lookup(id)
            .ok_or_else(|| err(format!("unknown simplex `{id}`")))?;
        if dim != degree {
            return Err(err(format!(
                "simplex `{id}` has dimension {dim}, cochain degree {degree}"
            )));
        }
        values[idx] =
            parse_rational(val.trim()).ok_or_else(|| err(format!("bad rational `{val}`")))?;
    }
    Cochain::from_values(complex, degree, ring, values)
}

pub fn serialize_cochain(x: &Cochain) -> String {
    let mut out = format!("degree {} ring {}\n", x.degree, x.ring.label());
    for (idx, v) in x.values.iter().enumerate() {
        if !v.is_zero() {
            out.push_str(&format!(
                "{} = {}\n",
                x.complex.simplex_id(x.degree, idx),
                v
            ));
        }
    }
    out
}

pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<Int>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<Int>().ok()?;
            let q = q.trim().parse::<Int>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

pub fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

impl fmt::Display for DeltaComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = (0..=self.dimension())
            .map(|n| format!("{}", self.size(n)))
            .collect();
        write!(f, "delta-complex [{}]", counts.join(", "))
    }
}
