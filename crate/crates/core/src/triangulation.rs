//! Regular triangulations of the degree-one point configuration, induced by
//! lifting heights, and simplex location with symbolic ε-perturbation.
//!
//! The lifting function is `ψ = max_I <λ_I, ·>`, where `λ_I` interpolates
//! the heights on the vertices of the maximal simplex `I`. A subset `I` is a
//! cell exactly when every other point lies strictly above the hyperplane
//! through its lifted vertices, i.e. `<λ_I, e_j> < h_j` for `j ∉ I`.

use std::collections::HashMap;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::combinations;
use crate::cone::GradedCone;
use crate::exactmath::{dot_eps, to_rational, EpsNumber, RatMatrix, Rational};
use crate::Error;

/// One height `ψ(e_i)` per configuration point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Heights(pub Vec<Rational>);

impl Heights {
    pub fn from_integers(v: &[i64]) -> Self {
        Heights(to_rational(v))
    }

    /// Integer heights near the paraboloid `1000·|e|²`, with a random
    /// perturbation in `0..100` to break ties.
    pub fn random(points: &[Vec<i64>], rng: &mut impl Rng) -> Self {
        Heights(
            points
                .iter()
                .map(|p| {
                    let norm: i64 = p.iter().map(|x| x * x).sum();
                    Rational::integer(1000 * norm + rng.gen_range(0..100))
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Simplex {
    /// Sorted point indices (0-based).
    indices: Vec<usize>,
    /// The linear piece of `ψ` on this simplex.
    functional: Vec<Rational>,
    /// `|det|` of the generator matrix.
    lattice_index: u64,
    #[serde(skip)]
    to_coords: RatMatrix,
    /// `lattice_index · to_coords`; integral.
    #[serde(skip)]
    scaled: Vec<Vec<i64>>,
}

impl Simplex {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn functional(&self) -> &[Rational] {
        &self.functional
    }

    pub fn lattice_index(&self) -> u64 {
        self.lattice_index
    }

    /// Coordinates of `p` in the basis `{e_i : i ∈ I}`.
    pub fn coordinates(&self, p: &[Rational]) -> Vec<Rational> {
        self.to_coords.mul_vec(p)
    }

    pub fn eps_coordinates(&self, p: &[EpsNumber]) -> Vec<EpsNumber> {
        let constant: Vec<Rational> = p.iter().map(|x| x.constant.clone()).collect();
        let slope: Vec<Rational> = p.iter().map(|x| x.slope.clone()).collect();
        self.to_coords
            .mul_vec(&constant)
            .into_iter()
            .zip(self.to_coords.mul_vec(&slope))
            .map(|(c, s)| EpsNumber::new(c, s))
            .collect()
    }

    /// `lattice_index` times the coordinates of an integer vector.
    fn scaled_coordinates(&self, n: &[i64]) -> Vec<i128> {
        self.scaled
            .iter()
            .map(|row| row.iter().zip(n).map(|(a, b)| *a as i128 * *b as i128).sum())
            .collect()
    }
}

/// Result of [`Triangulation::locate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub simplex: usize,
    pub coordinates: Vec<EpsNumber>,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    cone: GradedCone,
    heights: Heights,
    simplices: Vec<Simplex>,
    // Sum of all points: an interior point of K.
    interior_witness: Vec<i64>,
    // scaled coordinates of interior_witness, per simplex
    witness_coords: Vec<Vec<i128>>,
}

impl Triangulation {
    pub fn build(cone: &GradedCone, heights: &Heights) -> Result<Triangulation, Error> {
        cone.ensure_valid()?;
        let points = cone.points();
        let r = cone.rank();
        let d = points.len();
        if heights.0.len() != d {
            return Err(Error::InvalidInput(format!("{} heights given for {d} points", heights.0.len())));
        }
        if r > 0 && RatMatrix::from_i64_rows(points).rank() < r {
            return Err(Error::DegenerateConfiguration);
        }

        let mut simplices = Vec::new();
        for subset in combinations(d, r) {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&i| points[i].clone()).collect();
            let gens = RatMatrix::from_i64_rows(&rows);
            let det = gens.determinant()?;
            if det.is_zero() {
                continue;
            }
            let h: Vec<Rational> = subset.iter().map(|&i| heights.0[i].clone()).collect();
            let functional = gens.solve(&h)?.x;
            let mut tight = None;
            let mut below = false;
            for j in (0..d).filter(|j| !subset.contains(j)) {
                let value: Rational = functional
                    .iter()
                    .zip(&points[j])
                    .map(|(a, &b)| a * &Rational::integer(b))
                    .sum();
                match value.cmp(&heights.0[j]) {
                    std::cmp::Ordering::Greater => below = true,
                    std::cmp::Ordering::Equal => tight = Some(j),
                    std::cmp::Ordering::Less => {}
                }
            }
            if below {
                continue;
            }
            if let Some(j) = tight {
                return Err(Error::NotStrictlyConvex(format!(
                    "point {j} lies on the lifted facet through {subset:?}"
                )));
            }
            let to_coords = gens.transpose().inverse()?;
            let index = det.abs();
            let lattice_index = index.to_i64().expect("integral determinant") as u64;
            let scaled = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (&to_coords[(i, j)] * &index).to_i64().expect("adjugate is integral"))
                        .collect()
                })
                .collect();
            simplices.push(Simplex { indices: subset, functional, lattice_index, to_coords, scaled });
        }

        let mut used = vec![false; d];
        for s in &simplices {
            for &i in &s.indices {
                used[i] = true;
            }
        }
        if let Some(j) = used.iter().position(|u| !u) {
            return Err(Error::NotStrictlyConvex(format!("point {j} is not a vertex of the triangulation")));
        }

        let interior_witness: Vec<i64> = (0..r).map(|c| points.iter().map(|p| p[c]).sum()).collect();
        let witness_coords = simplices.iter().map(|s| s.scaled_coordinates(&interior_witness)).collect();
        let tri = Triangulation {
            cone: cone.clone(),
            heights: heights.clone(),
            simplices,
            interior_witness,
            witness_coords,
        };
        tri.check_facet_adjacency().map_err(Error::InvalidTriangulation)?;
        Ok(tri)
    }

    /// Builds with seeded random heights, retrying up to `attempts` times.
    /// Returns the triangulation and the number of attempts used.
    pub fn build_random(cone: &GradedCone, seed: u64, attempts: usize) -> Result<(Triangulation, usize), Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = None;
        for attempt in 1..=attempts {
            let heights = Heights::random(cone.points(), &mut rng);
            match Triangulation::build(cone, &heights) {
                Ok(t) => return Ok((t, attempt)),
                Err(e @ Error::NotStrictlyConvex(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(Error::RetriesExhausted {
            what: "strictly convex heights",
            seed,
            attempts,
            last: last.map(|e| e.to_string()).unwrap_or_default(),
        })
    }

    /// Every facet of every simplex is either on the boundary of the cone
    /// (all points weakly on the simplex side) or shared with exactly one
    /// other simplex lying on the opposite side.
    fn check_facet_adjacency(&self) -> Result<(), String> {
        let points = self.cone.points();
        let mut facets: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (si, s) in self.simplices.iter().enumerate() {
            for pos in 0..s.indices.len() {
                let mut f = s.indices.clone();
                let apex = f.remove(pos);
                facets.entry(f).or_default().push((si, apex));
            }
        }
        for (si, s) in self.simplices.iter().enumerate() {
            for pos in 0..s.indices.len() {
                let mut f = s.indices.clone();
                f.remove(pos);
                // Row `pos` of the coordinate map vanishes on the facet.
                let side = |p: &[i64]| -> i128 { s.scaled[pos].iter().zip(p).map(|(a, b)| *a as i128 * *b as i128).sum() };
                let boundary = points.iter().all(|p| side(p) >= 0);
                let sharing = &facets[&f];
                if boundary {
                    if sharing.len() != 1 {
                        return Err(format!("boundary facet {f:?} shared by {} simplices", sharing.len()));
                    }
                } else {
                    if sharing.len() != 2 {
                        return Err(format!("interior facet {f:?} of simplex {si} shared by {} simplices", sharing.len()));
                    }
                    let (_, other_apex) = sharing.iter().find(|(o, _)| *o != si).expect("two entries");
                    if side(&points[*other_apex]) >= 0 {
                        return Err(format!("simplices across facet {f:?} overlap"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cone(&self) -> &GradedCone {
        &self.cone
    }

    pub fn heights(&self) -> &Heights {
        &self.heights
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    /// Sum of lattice indices: the normalized volume of the configuration.
    pub fn normalized_volume(&self) -> u64 {
        self.simplices.iter().map(Simplex::lattice_index).sum()
    }

    /// Locates `p` (an ε-perturbed point) in a maximal simplex cone.
    ///
    /// A simplex whose coordinates are all positive in the ε-order wins and
    /// must be unique. An unperturbed point on a wall is assigned to the
    /// first simplex containing it; a perturbed point on a wall means the
    /// perturbation direction was not generic.
    pub fn locate(&self, p: &[EpsNumber]) -> Result<Location, Error> {
        let mut strict = Vec::new();
        let mut closed = None;
        for (i, s) in self.simplices.iter().enumerate() {
            let coords = s.eps_coordinates(p);
            if coords.iter().any(|c| c.signum() < 0) {
                continue;
            }
            if coords.iter().all(|c| c.signum() > 0) {
                strict.push(Location { simplex: i, coordinates: coords });
            } else if closed.is_none() {
                closed = Some(Location { simplex: i, coordinates: coords });
            }
        }
        match strict.len() {
            1 => Ok(strict.pop().expect("one")),
            0 => match closed {
                Some(loc) if p.iter().all(|x| x.slope.is_zero()) => Ok(loc),
                Some(_) => Err(Error::AmbiguousLocation),
                None => Err(Error::NotInAnySimplex),
            },
            _ => Err(Error::AmbiguousLocation),
        }
    }

    fn in_closed_cone(&self, p: &[EpsNumber]) -> bool {
        self.simplices.iter().any(|s| s.eps_coordinates(p).iter().all(|c| c.signum() >= 0))
    }

    /// `ψ(p) = max_I <λ_I, p>` in ε-arithmetic.
    pub fn psi_value(&self, p: &[EpsNumber]) -> Result<EpsNumber, Error> {
        if !self.in_closed_cone(p) {
            return Err(Error::PointOutsideCone);
        }
        Ok(self
            .simplices
            .iter()
            .map(|s| dot_eps(&s.functional, p))
            .max()
            .unwrap_or_else(EpsNumber::zero))
    }

    /// Membership in `K` or, with `strict`, in `K^open`. A point is interior
    /// iff pushing it slightly away from an interior witness keeps it in `K`.
    pub fn contains(&self, p: &[Rational], strict: bool) -> bool {
        if !strict {
            return self.in_closed_cone(&p.iter().cloned().map(EpsNumber::constant).collect::<Vec<_>>());
        }
        let w = to_rational(&self.interior_witness);
        let shifted: Vec<EpsNumber> = p.iter().zip(&w).map(|(a, b)| EpsNumber::new(a.clone(), -b)).collect();
        self.in_closed_cone(&shifted)
    }

    /// Integer fast path of [`Triangulation::contains`].
    pub fn contains_lattice(&self, n: &[i64], strict: bool) -> bool {
        self.simplices.iter().zip(&self.witness_coords).any(|(s, w)| {
            let a = s.scaled_coordinates(n);
            if strict {
                a.iter().zip(w).all(|(ai, wi)| *ai > 0 || (*ai == 0 && *wi <= 0))
            } else {
                a.iter().all(|ai| *ai >= 0)
            }
        })
    }

    /// `λ_I · e_j` for every simplex and every point, used to certify
    /// regularity from outside the builder.
    pub fn regularity_margins(&self) -> Vec<Vec<Rational>> {
        let points = self.cone.points();
        self.simplices
            .iter()
            .map(|s| {
                points
                    .iter()
                    .enumerate()
                    .map(|(j, p)| {
                        let v: Rational =
                            s.functional.iter().zip(p).map(|(a, &b)| a * &Rational::integer(b)).sum();
                        &self.heights.0[j] - &v
                    })
                    .collect()
            })
            .collect()
    }
}
