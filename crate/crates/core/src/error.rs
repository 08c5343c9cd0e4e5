use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("analytic derivative vanishes at the point (|h'| = {0:e}); dilatation is undefined")]
    DegenerateDerivative(f64),

    #[error("b = {b} and c = {c} lie on opposite sides of 1; the critical radius is not real")]
    MixedParameters { b: f64, c: f64 },

    #[error("critical radius needs k >= 2, got k = {0}")]
    DegenerateDegree(u32),

    #[error("hypocycloid needs R > r > 0, got R = {outer}, r = {rolling}")]
    InvalidRadii { outer: f64, rolling: f64 },

    #[error("R/r = {0} has no small-denominator rational form; the curve does not close")]
    IrrationalRatio(f64),

    #[error("operation requires the b = c, k = n, m = 1 subfamily: {0}")]
    SubfamilyRequired(String),

    #[error("need at least {required} samples, got {given}")]
    TooFewSamples { required: usize, given: usize },

    #[error("contour is not closed: first and last samples differ by {0:e}")]
    NonClosedContour(f64),

    #[error("|f| = {min_modulus:e} on the contour; perturb the contour away from the zero")]
    ZeroOnContour { min_modulus: f64 },

    #[error("zero at ({re}, {im}) is not strictly inside the contour")]
    ZeroOutsideContour { re: f64, im: f64 },

    #[error("Newton iteration did not converge in {0} iterations")]
    NoConvergence(usize),

    #[error("real Jacobian stayed singular after {0} damped gradient fallbacks")]
    SingularJacobian(usize),

    #[error("found {found} zeros, above the cap of {cap}")]
    CapExceeded { found: usize, cap: usize },

    #[error("singular zero present; the argument principle does not apply")]
    SingularZeroPresent,

    #[error("coefficient sequence is identically zero")]
    AllZero,

    #[error("x = 1 is not a root of the bound polynomial (remainder {0:e})")]
    NotBoundFamily(f64),

    #[error("deflated bound polynomial has no positive root")]
    NoPositiveRoot,

    #[error("deflated bound polynomial has {0} sign changes; the positive root is not unique")]
    AmbiguousPositiveRoot(usize),

    #[error("deg g = {coanalytic} exceeds deg h = {analytic}")]
    DegreeOrder { analytic: usize, coanalytic: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
