#pragma once

#include <optional>
#include <string>

#include "bbreg/groupring.hpp"
#include "bbreg/mockeuler.hpp"

namespace bbreg {

// ---- pairings valued in the graded piece I/I^2 ------------------------------

using RVec = std::vector<RingElem>;
using RMat = std::vector<std::vector<RingElem>>;  // row-major

// <x,y>_S = (x^T form y) * t_S where t_S is the class of
// sum_{l | S} c_l (sigma_l - 1) in I_{Gamma_S} / I_{Gamma_S}^2
struct MockPairing {
  CoeffRing ring;
  RMat form;                        // n x n base bilinear form
  std::map<i64, RingElem> weights;  // l -> c_l
};

// x^T * form * y over R
RingElem base_form(const MockPairing& pair, const RVec& x, const RVec& y);

// rank-1 tensor over Gamma_S holding sum_{l | S} c_l (sigma_l - 1)
TensorElem t_element(const MockPairing& pair, const Tower& tower, i64 S);

// the realized pairing value as a level-1 graded class over Gamma_S
GradedClass pairing_value(const MockPairing& pair, const Tower& tower, i64 S,
                          FiltrationPtr filt, const RVec& x, const RVec& y);

// lower a graded class along the projection Gamma_S -> Gamma_T (group leg only)
GradedClass mu_class(const GradedClass& a, const Group& target, FiltrationPtr filt_t);

// ---- lattices ---------------------------------------------------------------

// Bases (rho~ rows each) of finite-index sublattices of the two pairing
// arguments, with their declared indices; indices must be units in R.
struct LatticePair {
  RMat a_rows;  // P_1, ..., P_rho~
  RMat b_rows;  // Q_1, ..., Q_rho~
  RingElem index_a;
  RingElem index_b;
};

// rho~ x rho~ matrix of level-1 classes (<P_i, Q_j>_S)
std::vector<std::vector<GradedClass>> pairing_matrix(const MockPairing& pair,
                                                     const Tower& tower, i64 S,
                                                     FiltrationPtr filt,
                                                     const LatticePair& lat);

// ---- graded determinants ----------------------------------------------------

// Leibniz expansion of an n x n matrix of level-1 group-ring classes; the
// result has level n.  The 0 x 0 determinant is the level-0 class of 1.
// n <= 6 (expansion cost cap).
GradedClass graded_det(const std::vector<std::vector<GradedClass>>& mx,
                       FiltrationPtr filt);

// ---- the regulator ----------------------------------------------------------

// Reg(A,B) = sum_{i,j} (-1)^{i+j} (P_i (x) Q_j) (x) det(minor_{ij}),
// a level-(rho~ - 1) class whose rep is a rank-n^2 tensor over Gamma_S with
// component a*n + b carrying sum_{i,j} (-1)^{i+j} P_i[a] Q_j[b] det(minor_{ij})
GradedClass regulator_raw(const MockPairing& pair, const Tower& tower, i64 S,
                          FiltrationPtr filt, const LatticePair& lat);

// Reg(S) = Reg(A,B) / (index_a * index_b); throws index_not_invertible_error
// if either declared index is not a unit
GradedClass regulator(const MockPairing& pair, const Tower& tower, i64 S,
                      FiltrationPtr filt, const LatticePair& lat);

// prod over l | S/T of (1 + l - u_l)(1 + l + u_l)
RingElem regulator_euler_factor(const CoeffRing& ring,
                                const std::map<i64, RingElem>& units,
                                const Tower& tower, i64 S, i64 T);

// ---- compatibility across levels --------------------------------------------

// A coherent two-level configuration: shared base form and weights, shared
// A-side basis, B-side bases related per l | S/T by scaling one row by the
// unit part of the local factor f_l, with the cokernel order |B(.)| tracking
// the p-part of f_l (clamped at p^m).
struct RegulatorConfig {
  MockPairing pair;
  LatticePair lat_s;
  LatticePair lat_t;
  i64 b_order_s = 1;  // mock |B(S)|
  i64 b_order_t = 1;  // mock |B(T)|
};

RegulatorConfig gen_regulator_config(u64 seed, const Tower& tower,
                                     const CoeffRing& ring, i64 S, i64 T,
                                     const std::map<i64, RingElem>& units,
                                     int rho_tilde, int dim);

// mu_{S,T}(|B(S)| * Reg(S)) == |B(T)| * Reg(T) * prod_{l | S/T} f_l,
// with both sides evaluated independently as graded classes over Gamma_T
bool regulator_compatibility_check(const RegulatorConfig& cfg, const Tower& tower,
                                   const CoeffRing& ring, i64 S, i64 T,
                                   const std::map<i64, RingElem>& units);

// ---- leading-term comparison report ----------------------------------------

// Compares the leading term of the two-variable L-element against
// c * sha_order * b_order * Reg(S) for some scalar c, solving for c by
// enumeration when the coefficient ring is small enough.  Observational only.
struct Question52Report {
  int rho_tilde = 0;
  int l_order = 0;           // vanishing order of L against the Gamma_S filtration
  bool order_meets = false;  // l_order >= rho_tilde - 1
  bool leading_defined = false;  // L lies in the I^{rho~-1} image
  bool rhs_zero = false;
  bool consistent = false;
  bool c_determined = false;
  std::optional<RingElem> c;
  std::string status;
};

Question52Report question_52_report(const MockEulerSystem& sys,
                                    const MockPairing& pair,
                                    const LatticePair& lat, i64 sha_order,
                                    i64 b_order);

}  // namespace bbreg
