//! Identities that every antisymmetric biderivation satisfies on the
//! orthogonal idempotents `e_x`, instantiated with random elements.

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use super::Bracket;
use crate::algebra::IncidenceElement;
use crate::error::Result;
use crate::report::Report;

pub const ORTHOGONAL_IDEMPOTENTS: &str = "orthogonal-idempotents-vanish";
pub const IDEMPOTENT_SANDWICH: &str = "idempotent-sandwich";
pub const IDEMPOTENT_SANDWICH_ORTHOGONAL: &str = "idempotent-sandwich-orthogonal";
pub const CORNER_SWAP: &str = "corner-swap";
pub const ADJACENT_CORNERS: &str = "adjacent-corners";
pub const REVERSED_CORNERS: &str = "reversed-corners";
pub const CORNER_SUPPORT: &str = "corner-support";

const DENSITY: f64 = 0.5;

struct Ctx<'a> {
    b: &'a Bracket,
    idem: Vec<IncidenceElement>,
}

impl Ctx<'_> {
    fn br(&self, f: &IncidenceElement, g: &IncidenceElement) -> IncidenceElement {
        self.b.apply(f, g)
    }

    fn random(&self, rng: &mut StdRng) -> IncidenceElement {
        IncidenceElement::random(self.b.poset(), self.b.ring(), DENSITY, rng)
    }

    fn name(&self, xs: &[usize]) -> String {
        xs.iter()
            .map(|&x| format!("e{}", self.b.poset().label(x)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Runs one identity over all `tuples`, `samples` random draws each, in
/// parallel with a per-tuple seed so the outcome is order independent.
fn run<F>(report: &mut Report, check: &str, ctx: &Ctx<'_>, tuples: Vec<Vec<usize>>, samples: usize, seed: u64, f: F)
where
    F: Fn(&Ctx<'_>, &[usize], &mut StdRng) -> bool + Sync,
{
    let total = tuples.len() * samples;
    let violations: Vec<String> = tuples
        .par_iter()
        .enumerate()
        .filter_map(|(t, tuple)| {
            let mut rng = StdRng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let failed = (0..samples).filter(|_| !f(ctx, tuple, &mut rng)).count();
            (failed > 0).then(|| format!("({}): {failed}/{samples} samples fail", ctx.name(tuple)))
        })
        .collect();
    report.record(check, total, violations);
}

impl Bracket {
    /// Runs the idempotent identity suite after checking that the bracket
    /// is an antisymmetric biderivation.
    pub fn lemma_suite(&self, samples: usize, seed: u64) -> Result<Report> {
        self.require_biderivation()?;
        Ok(self.lemma_suite_unchecked(samples, seed))
    }

    /// The identity suite on an arbitrary bracket; failures are expected
    /// when the bracket is not an antisymmetric biderivation.
    pub fn lemma_suite_unchecked(&self, samples: usize, seed: u64) -> Report {
        let p = self.poset().clone();
        let n = p.len();
        let ctx = Ctx {
            b: self,
            idem: (0..n)
                .map(|x| IncidenceElement::idempotent_sum(&p, self.ring(), [x]))
                .collect(),
        };
        let samples = samples.max(1);
        let mut report = Report::new();

        let pairs: Vec<Vec<usize>> = (0..n).flat_map(|a| (0..n).map(move |b| vec![a, b])).collect();
        let triples: Vec<Vec<usize>> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| vec![a, b, c])))
            .collect();
        let distinct_triples: Vec<Vec<usize>> = triples
            .iter()
            .filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
            .cloned()
            .collect();

        // B(e, f) = 0 for orthogonal e, f
        let orthogonal: Vec<Vec<usize>> = pairs.iter().filter(|t| t[0] != t[1]).cloned().collect();
        run(&mut report, ORTHOGONAL_IDEMPOTENTS, &ctx, orthogonal, 1, seed, |c, t, _| {
            c.br(&c.idem[t[0]], &c.idem[t[1]]).is_zero()
        });

        // B(e, f x g) = f B(e, x) g
        run(&mut report, IDEMPOTENT_SANDWICH, &ctx, triples.clone(), samples, seed ^ 1, |c, t, rng| {
            let (e, f, g) = (&c.idem[t[0]], &c.idem[t[1]], &c.idem[t[2]]);
            let x = c.random(rng);
            c.br(e, &(&(f * &x) * g)) == &(f * &c.br(e, &x)) * g
        });

        // B(e, f x g) = 0 when e is orthogonal to f and g
        let orthogonal_to_both: Vec<Vec<usize>> = triples
            .iter()
            .filter(|t| t[0] != t[1] && t[0] != t[2])
            .cloned()
            .collect();
        run(&mut report, IDEMPOTENT_SANDWICH_ORTHOGONAL, &ctx, orthogonal_to_both, samples, seed ^ 2, |c, t, rng| {
            let (e, f, g) = (&c.idem[t[0]], &c.idem[t[1]], &c.idem[t[2]]);
            let x = c.random(rng);
            c.br(e, &(&(f * &x) * g)).is_zero()
        });

        // B(e, e x f) = B(e x f, f)
        run(&mut report, CORNER_SWAP, &ctx, pairs, samples, seed ^ 3, |c, t, rng| {
            let (e, f) = (&c.idem[t[0]], &c.idem[t[1]]);
            let x = c.random(rng);
            let exf = &(e * &x) * f;
            c.br(e, &exf) == c.br(&exf, f)
        });

        // B(e x f, f y g) = e B(e, x) f y g
        run(&mut report, ADJACENT_CORNERS, &ctx, distinct_triples.clone(), samples, seed ^ 4, |c, t, rng| {
            let (e, f, g) = (&c.idem[t[0]], &c.idem[t[1]], &c.idem[t[2]]);
            let (x, y) = (c.random(rng), c.random(rng));
            let lhs = c.br(&(&(e * &x) * f), &(&(f * &y) * g));
            let rhs = &(&(&(e * &c.br(e, &x)) * f) * &y) * g;
            lhs == rhs
        });

        // B(e x f, g y e) = -g B(g, y) e x f
        run(&mut report, REVERSED_CORNERS, &ctx, distinct_triples, samples, seed ^ 5, |c, t, rng| {
            let (e, f, g) = (&c.idem[t[0]], &c.idem[t[1]], &c.idem[t[2]]);
            let (x, y) = (c.random(rng), c.random(rng));
            let lhs = c.br(&(&(e * &x) * f), &(&(g * &y) * e));
            let rhs = -&(&(&(&(g * &c.br(g, &y)) * e) * &x) * f);
            lhs == rhs
        });

        // B(e x f, g y h) = e g B(e x f, g y h) f h when e, g are orthogonal to f, h
        let quads: Vec<Vec<usize>> = (0..n)
            .flat_map(|e| (0..n).flat_map(move |f| (0..n).flat_map(move |g| (0..n).map(move |h| vec![e, f, g, h]))))
            .filter(|t| t[0] != t[1] && t[0] != t[3] && t[2] != t[1] && t[2] != t[3])
            .collect();
        run(&mut report, CORNER_SUPPORT, &ctx, quads, samples, seed ^ 6, |c, t, rng| {
            let (e, f, g, h) = (&c.idem[t[0]], &c.idem[t[1]], &c.idem[t[2]], &c.idem[t[3]]);
            let (x, y) = (c.random(rng), c.random(rng));
            let value = c.br(&(&(e * &x) * f), &(&(g * &y) * h));
            let rhs = &(&(&(e * g) * &value) * f) * h;
            value == rhs
        });

        report
    }
}
