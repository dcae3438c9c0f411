//! Jacobians of finite multigraphs, the monodromy pairing, and a pairing
//! based discrete logarithm solver on `Jac(G)`.
//!
//! ```
//! use graphjac::{analyze, families, dlp_cyclic, Divisor, DlpInstance};
//!
//! let g = families::cycle(3);
//! let s = analyze(&g);
//! let base = Divisor::from_i64s(&[1, -1, 0]);
//! let target = s.reduce(&Divisor::from_i64s(&[2, -2, 0]));
//! let sol = dlp_cyclic(&DlpInstance::new(&s, base, target).unwrap()).unwrap();
//! assert_eq!((sol.x.to_string(), sol.modulus.to_string()), ("2".into(), "3".into()));
//! ```

pub mod corpus;
pub mod divisor;
pub mod dlp;
pub mod error;
pub mod graph;
pub mod instance;
pub mod jacobian;
pub mod linalg;
pub mod oracle;
pub mod pairing;
pub mod perf;
pub mod selfcheck;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use divisor::{degree, dhar_reduce, div_of_function, equivalent, is_principal, is_q_reduced, Divisor, VertexFunction};
pub use dlp::{dlp_cyclic, dlp_general, verify_solution, DlpInstance, DlpSolution};
pub use error::{Error, Result};
pub use graph::{build_graph, families, MultiGraph};
pub use jacobian::{analyze, element_order, order_general, spanning_tree_count, JacobianStructure, BASE_VERTEX};
pub use linalg::{IntegerMatrix, RationalMatrix};
pub use oracle::{brute_force_dlp, enumerate_group, spanning_trees_by_enumeration, GroupTable};
pub use pairing::{
    gen_inverse_minor, monodromy_pairing, moore_penrose, pairing_by_definition, GeneralizedInverse, InverseKind,
    PairingValue,
};
