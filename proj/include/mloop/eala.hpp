#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mloop/supportiso.hpp"

namespace mloop {

// t^mu d_theta: x^lambda -> theta(lambda) x^{lambda + mu}
struct DegreeDerivation {
  IntVec mu;
  Vec theta;
};

// bracket of two degree derivations in closed form
DegreeDerivation der_bracket(const DegreeDerivation& a, const DegreeDerivation& b);
LoopElement apply_derivation(const DegreeDerivation& d, const LoopElement& x);

struct DSpec {
  enum Kind { Degree0, ScderWindow, Explicit } kind = Degree0;
  int k = 0;                            // Gamma-window extent for ScderWindow
  std::vector<DegreeDerivation> basis;  // Explicit generators
};
// "degree0" or "scder_window:k"
DSpec parse_dspec(const std::string& s);
std::string dspec_str(const DSpec& d);

// tau(d_i, d_j)(d_k) on the window basis of D
struct TauEntry {
  int i = 0, j = 0, k = 0;
  CycNum value;
};

struct FrameOptions {
  bool validate = true;  // false skips the ev and (L1)-(L4) checks (for degenerate test frames)
  int gamma_radius = 2;  // Gamma window for C and D slices
};

struct EalaFrame {
  Multiloop L;
  DSpec dspec;
  IntMat gamma;  // Hermite basis of the central grading group
  std::vector<TauEntry> tau;
  int gamma_radius = 2;
  std::uint64_t id = 0;

  int n() const { return L.n(); }
  // D^mu as a subspace of Hom(Z^n, k) = k^n (dimension 0 when mu carries no derivations)
  Subspace d_slice(const IntVec& mu) const;
  // the Gamma window of degrees, Gamma coordinates bounded by r
  std::vector<IntVec> gamma_window(int r) const;
  // window basis of D, ordered by degree then echelon basis
  std::vector<DegreeDerivation> d_window() const;
  // h + C^0 + D^0
  int dim_H() const;

  std::map<std::tuple<int, int, int>, CycNum> tau_table;
  std::map<IntVec, int> d_offset;  // first window index of each degree
};

struct EalaElement {
  std::uint64_t frame = 0;
  LoopElement x;
  std::map<IntVec, Vec> c;  // C^mu: values on the echelon basis of D^{-mu}
  std::map<IntVec, Vec> d;  // D^mu: theta in k^n
  bool is_zero() const { return x.is_zero() && c.empty() && d.empty(); }
};
bool operator==(const EalaElement& a, const EalaElement& b);
EalaElement operator+(const EalaElement& a, const EalaElement& b);
EalaElement operator-(const EalaElement& a, const EalaElement& b);
EalaElement operator*(const CycNum& s, const EalaElement& a);

EalaFrame build_frame(const Multiloop& L, const DSpec& d = {}, const std::vector<TauEntry>& tau = {},
                      const FrameOptions& opt = {});

EalaElement loop_elem(const EalaFrame& f, const IntVec& lam, const Vec& x);
EalaElement c_elem(const EalaFrame& f, const IntVec& mu, int j);  // dual basis vector
EalaElement d_elem(const EalaFrame& f, const IntVec& mu, const Vec& theta);

EalaElement eala_bracket(const EalaFrame& f, const EalaElement& a, const EalaElement& b);
CycNum eala_form(const EalaFrame& f, const EalaElement& a, const EalaElement& b);
// sigma_D(x, y) as a C-valued element
EalaElement sigma_D(const EalaFrame& f, const LoopElement& x, const LoopElement& y);

std::vector<EalaElement> H_basis(const EalaFrame& f);
// loop components for |lambda| <= radius, then C and D on the Gamma window
std::vector<EalaElement> window_basis(const EalaFrame& f, int radius);

struct SampleReport {
  int samples = 0;
  int failures = 0;
  std::string witness;
};
SampleReport jacobi_samples(const EalaFrame& f, int radius, int samples, std::uint64_t seed);
SampleReport invariance_samples(const EalaFrame& f, int radius, int samples, std::uint64_t seed);

struct EalaReport {
  std::vector<Check> axioms;  // EA1 .. EA6
  int radius = 0, gamma_radius = 0;
  int dim_H = 0;
  int real_roots = 0, null_roots = 0;  // window counts of R \ R^0 and R^0
  int null_rank = 0;
  int max_nilpotency = 0;
  int ea5_witnesses = 0;
  bool all_pass() const;
};
EalaReport verify_axioms(const EalaFrame& f, int radius, std::uint64_t seed = 0);

struct FormUniqueness {
  int unknowns = 0, equations = 0, dimension = 0;
};
// graded invariant symmetric forms on the window |lambda| <= radius
FormUniqueness form_uniqueness(const Multiloop& L, int radius);
// residual of c * (standard form) in the uniqueness system (zero iff it solves it)
bool form_solves_system(const Multiloop& L, int radius, const CycNum& c);

struct ProbeStep {
  std::string what;
  int pairs = 0;
  bool brackets = true, form = true, cartan = true;
  CycNum scale;
  std::string witness;
  bool ok() const { return brackets && form && cartan; }
};
struct ProbeReport {
  std::vector<ProbeStep> steps;
  bool agree = true;
  std::string note;
};
// transports the degree0 frame of L along the regrading chain of the certificate
ProbeReport eala_equivalence_probe(const Multiloop& L, const Multiloop& Lp, const std::optional<IsoCertificate>& c,
                                   int radius);

}  // namespace mloop
