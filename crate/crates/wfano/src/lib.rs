//! Exact certificates for exceptional weighted Fano hypersurface families.
//!
//! A quasismooth hypersurface X of degree d in weighted projective space
//! P(w0, ..., w4) is Fano when its index I = w0 + ... + w4 - d is
//! positive. This crate works with a structured class of non-quasismooth
//! degenerations of such hypersurfaces: the weights split as
//!
//! ```text
//! (w0, w1, w2, w3, w4) = (m3 v0, m3 v1, m2 v2, m2 v3, m2 v4),
//! d = m2 m3,  gcd(m2, m3) = 1,  m3 = a2 a3 a4 + 1,
//! ```
//!
//! and the defining polynomial combines a head in the coordinates z0, z1
//! with the cycle z4 z2^a2 + z2 z3^a3 + z3 z4^a4. Replacing the
//! invertible head of the general member by a two-monomial head creates a
//! non-quasismooth family whose singularities sit at the head coordinate
//! points. The interesting question about such a family is whether its
//! general member is an exceptional Fano 3-fold, a property established
//! here through exact arithmetic, in two certified steps:
//!
//! - the head points are klt, witnessed by a point of the Newton
//!   polyhedron interior produced both in closed form and by an exact
//!   rational linear program ([`newton`]);
//! - the alpha invariant exceeds 1, witnessed by a tilt bound assembled
//!   from a smooth-point estimate and, at every singular head point,
//!   index and multiplicity bounds of the weighted tangent cone
//!   ([`exceptional`]).
//!
//! Every inequality that enters a verdict is recorded as a named exact
//! comparison, so a certificate can be re-checked line by line. All
//! rational arithmetic is arbitrary precision; nothing is ever rounded.
//!
//! The supporting layers are: [`core`] (weights, monomials, exact
//! rationals), [`structure`] (recovering m2, m3, the cycle exponents and
//! head types), [`sections`] (monomial bases of degree d, enumerated and
//! in closed form), [`smoothness`] (quasismoothness of a support, the
//! Kähler-Einstein estimate, and head perturbations), [`search`]
//! (systematic enumeration of structured systems), [`fixtures`] (pinned
//! reference systems with expected outcomes), and [`cli`] (the `wfano`
//! command-line tool).

pub mod cli;
pub mod core;
pub mod exceptional;
pub mod fixtures;
pub mod newton;
pub mod search;
pub mod sections;
pub mod smoothness;
pub mod structure;
