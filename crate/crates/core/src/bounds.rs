//! Closed-form bounds on reset length, merge length, and rendezvous values.
//!
//! Every integer-valued formula is evaluated exactly in 128-bit arithmetic,
//! and every rational-valued formula as an exact [`Ratio`], so comparisons
//! against computed quantities never suffer rounding. The three bounds with
//! irrational coefficients ([`triple_rendezvous_upper`] and its chained
//! extensions) are evaluated in `f64`; when such a bound is compared to an
//! integer quantity the convention is `computed <= ceil(bound)`, giving the
//! bound one unit of slack so floating evaluation cannot produce a spurious
//! violation of a true inequality.
//!
//! Lower bounds in this catalog are witness bounds: they promise that some
//! automaton family attains at least the stated value, and the verifier
//! checks the designated family against them. Upper bounds hold for every
//! automaton in the stated class.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// A bound formula was evaluated outside its domain of validity.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{func} requires {needs}, got n = {n}")]
    BadN {
        func: &'static str,
        n: u64,
        needs: &'static str,
    },
    #[error("{func} requires {needs}, got n = {n}, k = {k}")]
    BadNk {
        func: &'static str,
        n: u64,
        k: u64,
        needs: &'static str,
    },
}

/// Exact binomial coefficient `C(n, k)`.
///
/// Returns 0 when `k > n`. Panics if the result (or an intermediate product)
/// exceeds `u128`; the catalog's callers stay far below that.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Multiplying before dividing keeps every intermediate integral:
        // after step i, acc = C(n - k + i, i).
        acc = acc
            .checked_mul((n - k + i) as u128)
            .expect("binomial coefficient overflows u128")
            / i as u128;
    }
    acc
}

fn pow_i128(base: i128, exp: u32) -> i128 {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).expect("bound arithmetic overflows i128");
    }
    acc
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd_i128(b, a % b)
    }
}

/// An exact rational number over `i128`, kept reduced with a positive
/// denominator so that equality and ordering are structural.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    /// Reduced rational `num/den`. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num.abs(), den.abs()).max(1);
        Ratio {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(value: i128) -> Self {
        Ratio { num: value, den: 1 }
    }

    pub fn numerator(self) -> i128 {
        self.num
    }

    pub fn denominator(self) -> i128 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    /// Largest integer `<= self`.
    pub fn floor(self) -> i128 {
        // den > 0, so euclidean division rounds toward negative infinity.
        self.num.div_euclid(self.den)
    }

    /// Smallest integer `>= self`.
    pub fn ceil(self) -> i128 {
        let q = self.num.div_euclid(self.den);
        if self.num.rem_euclid(self.den) == 0 {
            q
        } else {
            q + 1
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        let lhs = self
            .num
            .checked_mul(other.den)
            .expect("ratio comparison overflows i128");
        let rhs = other
            .num
            .checked_mul(self.den)
            .expect("ratio comparison overflows i128");
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Length bound `C(n-k+2, 2)` on merging some pair inside any synchronizable
/// k-set of an n-state automaton, i.e. on one step of the set-collapsing
/// chain. Domain: `2 <= k <= n`.
pub fn frankl_pin_set(n: u64, k: u64) -> Result<u128, BoundsError> {
    if k < 2 || k > n {
        return Err(BoundsError::BadNk {
            func: "frankl_pin_set",
            n,
            k,
            needs: "2 <= k <= n",
        });
    }
    Ok(binomial(n - k + 2, 2))
}

/// Reset-length bound `(n^3 - n)/6` for any synchronizing n-state automaton:
/// the sum of [`frankl_pin_set`] over set sizes `2..=n`.
pub fn frankl_pin_reset(n: u64) -> Result<u128, BoundsError> {
    if n < 1 {
        return Err(BoundsError::BadN {
            func: "frankl_pin_reset",
            n,
            needs: "n >= 1",
        });
    }
    let n = n as u128;
    Ok((n * n * n - n) / 6)
}

/// Reset-length bound `(n-1) * C(n, 2)` from merging one pair at a time,
/// each merge crossing every pair of states at most once. This is the
/// guarantee met by greedy pairwise reset construction.
pub fn naive_reset(n: u64) -> Result<u128, BoundsError> {
    if n < 1 {
        return Err(BoundsError::BadN {
            func: "naive_reset",
            n,
            needs: "n >= 1",
        });
    }
    Ok((n as u128 - 1) * binomial(n, 2))
}

/// Merge-length bound `C(n, 2)` for any synchronizable pair: a shortest
/// merging word visits each unordered pair at most once.
pub fn naive_pair(n: u64) -> Result<u128, BoundsError> {
    if n < 1 {
        return Err(BoundsError::BadN {
            func: "naive_pair",
            n,
            needs: "n >= 1",
        });
    }
    Ok(binomial(n, 2))
}

/// Upper bound on the minimum k-set weight of any synchronizing n-state
/// automaton:
///
/// ```text
/// sum_{i=1}^{floor(k/2)} C(i+1, 2)  +  sum_{i=1}^{ceil(k/2)-1} C(n-i+1, 2)
/// ```
///
/// The first sum shrinks the full set by floor(k/2) states; a pigeonhole
/// argument then finds a ceil(k/2)-set whose preimage is a k-set, and the
/// second sum collapses it. Domain: `2 <= k <= n`.
pub fn weak_rendezvous_upper(n: u64, k: u64) -> Result<u128, BoundsError> {
    if k < 2 || k > n {
        return Err(BoundsError::BadNk {
            func: "weak_rendezvous_upper",
            n,
            k,
            needs: "2 <= k <= n",
        });
    }
    let mut total = 0u128;
    for i in 1..=k / 2 {
        total += binomial(i + 1, 2);
    }
    for i in 1..=k.div_ceil(2) - 1 {
        total += binomial(n - i + 1, 2);
    }
    Ok(total)
}

/// Upper bound `(3 - sqrt(5))/4 * n^2 + (3/2) n` on the minimum triple
/// weight of any synchronizing n-state automaton. Domain: `n >= 3`.
pub fn triple_rendezvous_upper(n: u64) -> Result<f64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::BadN {
            func: "triple_rendezvous_upper",
            n,
            needs: "n >= 3",
        });
    }
    let x = n as f64;
    Ok((3.0 - 5f64.sqrt()) / 4.0 * x * x + 1.5 * x)
}

/// Upper bound on the minimum 4-set weight of any synchronizing n-state
/// automaton, chained on top of [`triple_rendezvous_upper`]:
/// `triple_rendezvous_upper(n) + (2 - sqrt(3)) n^2 + 2n - 1`.
/// Domain: `n >= 4`.
pub fn quad_rendezvous_upper(n: u64) -> Result<f64, BoundsError> {
    if n < 4 {
        return Err(BoundsError::BadN {
            func: "quad_rendezvous_upper",
            n,
            needs: "n >= 4",
        });
    }
    let x = n as f64;
    Ok(triple_rendezvous_upper(n)? + (2.0 - 3f64.sqrt()) * x * x + 2.0 * x - 1.0)
}

/// Upper bound on the minimum 5-set weight of any synchronizing n-state
/// automaton, chained on top of [`quad_rendezvous_upper`]:
/// `quad_rendezvous_upper(n) + (4 - sqrt(7))/4 * n^2 + (3/2) n - 1`.
/// Domain: `n >= 5`.
pub fn quint_rendezvous_upper(n: u64) -> Result<f64, BoundsError> {
    if n < 5 {
        return Err(BoundsError::BadN {
            func: "quint_rendezvous_upper",
            n,
            needs: "n >= 5",
        });
    }
    let x = n as f64;
    Ok(quad_rendezvous_upper(n)? + (4.0 - 7f64.sqrt()) / 4.0 * x * x + 1.5 * x - 1.0)
}

/// Minimum k-set weight of the Černý automaton on n states: `(k-2) n + 1`,
/// attained by the k-set `{1, ..., k}`. As a catalog entry this is a witness
/// lower bound on the worst-case minimum k-set weight over all synchronizing
/// automata. Domain: `2 <= k <= n`.
pub fn cerny_min_weight_lower(n: u64, k: u64) -> Result<u128, BoundsError> {
    if k < 2 || k > n {
        return Err(BoundsError::BadNk {
            func: "cerny_min_weight_lower",
            n,
            k,
            needs: "2 <= k <= n",
        });
    }
    Ok((k as u128 - 2) * n as u128 + 1)
}

/// Witness lower bound `(k-1)/k * n^2 - 2n` on the worst-case maximum
/// synchronizable k-set weight, attained up to lower-order terms by k states
/// equally spaced around the Černý cycle. Domain: `2 <= k <= n`. The value
/// can be negative for small n, where the bound is vacuous.
pub fn cerny_max_weight_lower(n: u64, k: u64) -> Result<Ratio, BoundsError> {
    if k < 2 || k > n {
        return Err(BoundsError::BadNk {
            func: "cerny_max_weight_lower",
            n,
            k,
            needs: "2 <= k <= n",
        });
    }
    let (n, k) = (n as i128, k as i128);
    Ok(Ratio::new((k - 1) * n * n - 2 * n * k, k))
}

/// Witness lower bound `(4/3) (n/4k)^(k-1)` on the worst-case minimum
/// synchronizable k-set weight over automata that need not be synchronizing,
/// attained by the gadget family for large n. Evaluated exactly as
/// `4 n^(k-1) / (3 (4k)^(k-1))`. Domain: `3 <= k <= n`.
pub fn nonsync_min_weight_lower(n: u64, k: u64) -> Result<Ratio, BoundsError> {
    if k < 3 || k > n {
        return Err(BoundsError::BadNk {
            func: "nonsync_min_weight_lower",
            n,
            k,
            needs: "3 <= k <= n",
        });
    }
    let e = (k - 1) as u32;
    let num = 4i128
        .checked_mul(pow_i128(n as i128, e))
        .expect("bound arithmetic overflows i128");
    let den = 3i128
        .checked_mul(pow_i128(4 * k as i128, e))
        .expect("bound arithmetic overflows i128");
    Ok(Ratio::new(num, den))
}

/// Sharper witness lower bound `n^2 / 8` for the triple (k = 3) case of
/// [`nonsync_min_weight_lower`], attained strictly by the single-gadget
/// family from n = 12 on. Domain: `n >= 1`.
pub fn nonsync_triple_lower(n: u64) -> Result<Ratio, BoundsError> {
    if n < 1 {
        return Err(BoundsError::BadN {
            func: "nonsync_triple_lower",
            n,
            needs: "n >= 1",
        });
    }
    let n = n as i128;
    Ok(Ratio::new(n * n, 8))
}

/// Upper bound `1 + sum_{i=2}^{k-1} (C(n, i) - C(n-2, i-2))` on the minimum
/// synchronizable k-set weight of any n-state automaton with at least one
/// synchronizable k-set. A shortest collapsing path visits each smaller set
/// at most once, and when the automaton is not synchronizing every set
/// containing some permanently separated pair is excluded from the path.
/// Domain: `3 <= k <= n`.
pub fn nonsync_min_weight_upper(n: u64, k: u64) -> Result<u128, BoundsError> {
    if k < 3 || k > n {
        return Err(BoundsError::BadNk {
            func: "nonsync_min_weight_upper",
            n,
            k,
            needs: "3 <= k <= n",
        });
    }
    let mut total = 1u128;
    for i in 2..k {
        total += binomial(n, i) - binomial(n - 2, i - 2);
    }
    Ok(total)
}

/// Whether a bound caps a quantity from above or promises a witness from
/// below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSide {
    Upper,
    Lower,
}

/// Which computed quantity a bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundTarget {
    /// Minimum weight over the k-sets (the automaton's best rendezvous).
    MinWeight,
    /// Maximum weight over the synchronizable k-sets.
    MaxWeight,
    /// Shortest reset word length.
    ResetLength,
    /// Shortest merge length of a single set.
    MergeLength,
}

/// An evaluated bound: exact when the formula is rational, `f64` otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundQuantity {
    Exact(Ratio),
    Approx(f64),
}

impl BoundQuantity {
    pub fn to_f64(self) -> f64 {
        match self {
            BoundQuantity::Exact(r) => r.to_f64(),
            BoundQuantity::Approx(x) => x,
        }
    }
}

impl fmt::Display for BoundQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundQuantity::Exact(r) => write!(f, "{r}"),
            BoundQuantity::Approx(x) => write!(f, "{x:.4}"),
        }
    }
}

/// One evaluated catalog entry for a given `(n, k)`.
#[derive(Clone, Debug)]
pub struct BoundValue {
    pub name: &'static str,
    pub n: u64,
    pub k: Option<u64>,
    pub value: BoundQuantity,
    pub side: BoundSide,
    pub applies_to: BoundTarget,
}

impl BoundValue {
    fn exact_int(
        name: &'static str,
        n: u64,
        k: Option<u64>,
        value: u128,
        side: BoundSide,
        applies_to: BoundTarget,
    ) -> Self {
        let value = i128::try_from(value).expect("bound value overflows i128");
        BoundValue {
            name,
            n,
            k,
            value: BoundQuantity::Exact(Ratio::from_int(value)),
            side,
            applies_to,
        }
    }

    fn exact(
        name: &'static str,
        n: u64,
        k: Option<u64>,
        value: Ratio,
        side: BoundSide,
        applies_to: BoundTarget,
    ) -> Self {
        BoundValue {
            name,
            n,
            k,
            value: BoundQuantity::Exact(value),
            side,
            applies_to,
        }
    }

    fn approx(
        name: &'static str,
        n: u64,
        k: Option<u64>,
        value: f64,
        side: BoundSide,
        applies_to: BoundTarget,
    ) -> Self {
        assert!(value.is_finite(), "bound value must be finite");
        BoundValue {
            name,
            n,
            k,
            value: BoundQuantity::Approx(value),
            side,
            applies_to,
        }
    }

    /// Whether an integer computed quantity satisfies this bound. Exact
    /// bounds compare exactly; `f64` upper bounds allow the documented unit
    /// of ceiling slack (and lower bounds the matching floor slack).
    pub fn admits(&self, computed: u128) -> bool {
        let c = i128::try_from(computed).expect("computed value overflows i128");
        match (self.side, self.value) {
            (BoundSide::Upper, BoundQuantity::Exact(r)) => Ratio::from_int(c) <= r,
            (BoundSide::Lower, BoundQuantity::Exact(r)) => Ratio::from_int(c) >= r,
            (BoundSide::Upper, BoundQuantity::Approx(x)) => c <= x.ceil() as i128,
            (BoundSide::Lower, BoundQuantity::Approx(x)) => c >= x.floor() as i128,
        }
    }
}

/// Every catalog bound whose domain covers `(n, k)`, evaluated there.
///
/// Lower bounds are witness bounds for extremal families; upper bounds hold
/// for every automaton in their class (synchronizing for the rendezvous
/// bounds, any automaton with a synchronizable k-set for the nonsync bound).
pub fn catalog(n: u64, k: u64) -> Vec<BoundValue> {
    use BoundSide::{Lower, Upper};
    use BoundTarget::{MaxWeight, MergeLength, MinWeight, ResetLength};

    let mut out = Vec::new();
    if let Ok(v) = frankl_pin_set(n, k) {
        out.push(BoundValue::exact_int("frankl-pin-set", n, Some(k), v, Upper, MergeLength));
    }
    if let Ok(v) = frankl_pin_reset(n) {
        out.push(BoundValue::exact_int("frankl-pin-reset", n, None, v, Upper, ResetLength));
    }
    if let Ok(v) = naive_reset(n) {
        out.push(BoundValue::exact_int("pairwise-greedy-reset", n, None, v, Upper, ResetLength));
    }
    if let Ok(v) = naive_pair(n) {
        out.push(BoundValue::exact_int("pair-merge", n, Some(2), v, Upper, MergeLength));
    }
    if let Ok(v) = weak_rendezvous_upper(n, k) {
        out.push(BoundValue::exact_int("weak-rendezvous-upper", n, Some(k), v, Upper, MinWeight));
    }
    if k == 3 {
        if let Ok(v) = triple_rendezvous_upper(n) {
            out.push(BoundValue::approx("triple-rendezvous-upper", n, Some(k), v, Upper, MinWeight));
        }
    }
    if k == 4 {
        if let Ok(v) = quad_rendezvous_upper(n) {
            out.push(BoundValue::approx("quad-rendezvous-upper", n, Some(k), v, Upper, MinWeight));
        }
    }
    if k == 5 {
        if let Ok(v) = quint_rendezvous_upper(n) {
            out.push(BoundValue::approx("quint-rendezvous-upper", n, Some(k), v, Upper, MinWeight));
        }
    }
    if let Ok(v) = cerny_min_weight_lower(n, k) {
        out.push(BoundValue::exact_int("cerny-min-weight", n, Some(k), v, Lower, MinWeight));
    }
    if let Ok(v) = cerny_max_weight_lower(n, k) {
        out.push(BoundValue::exact("cerny-max-weight", n, Some(k), v, Lower, MaxWeight));
    }
    if let Ok(v) = nonsync_min_weight_lower(n, k) {
        out.push(BoundValue::exact("nonsync-min-weight-lower", n, Some(k), v, Lower, MinWeight));
    }
    if k == 3 {
        if let Ok(v) = nonsync_triple_lower(n) {
            out.push(BoundValue::exact("nonsync-triple-lower", n, Some(k), v, Lower, MinWeight));
        }
    }
    if let Ok(v) = nonsync_min_weight_upper(n, k) {
        out.push(BoundValue::exact_int("nonsync-min-weight-upper", n, Some(k), v, Upper, MinWeight));
    }
    out
}
