#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mloop/torus.hpp"

namespace mloop {

// A regrading of a Q x Z^n graded algebra. For rho, `basis` spans the domain lattice (rows) and
// `images` holds rho of each basis row; for s_shift, `s` holds integer values of s on the base.
struct Regrade {
  enum Kind { Rho, SShift } kind = Rho;
  IntMat basis, images;
  std::vector<IntVec> s;
};

Regrade rho_regrade(IntMat basis, IntMat images);
Regrade shift_regrade(std::vector<IntVec> s);

// Lazy view of L after a sequence of regradings. Components are subspaces of g sitting in degree lambda.
class RegradedView {
 public:
  explicit RegradedView(const Multiloop& L) : L_(&L) {}
  // validates each step against the current support lattice; throws NotMonomorphism / DomainMismatch
  RegradedView then(const Regrade& r) const;
  // root index alpha, or -1 for the h-weight zero part, or kAll for the whole Z^n component
  static constexpr int kAll = -2;
  Subspace component(int alpha, const IntVec& lam) const;
  const Multiloop& base() const { return *L_; }
  const std::vector<Regrade>& steps() const { return steps_; }
  // Hermite basis of the lattice generated by the support of the view
  IntMat support_lattice() const;

 private:
  std::optional<IntVec> pull_back(int alpha, IntVec lam) const;
  const Multiloop* L_;
  std::vector<Regrade> steps_;
};

RegradedView apply_regrade(const Multiloop& L, const Regrade& r);

// s(alpha) for a root given by base coordinates
IntVec shift_value(const std::vector<IntVec>& s, const IntVec& coords);

struct Verdict {
  bool ok = true;
  std::string witness;
};

// sigma'_i = phi (sigma^P)_i phi^{-1}, phi an invertible bracket-preserving map
Verdict verify_zn_certificate(const Multiloop& L, const Multiloop& Lp, const IntMat& P, const Mat& phi);

// s on the base of L (rational, tau_i = zeta^{-s_i(alpha)}), P, phi : g -> g'
struct IsoCertificate {
  std::vector<std::vector<Rational>> s;
  IntMat P;
  Mat phi;
};

// tau for a certificate s; FieldTooSmall if the roots of unity leave Q(zeta_field_order)
AutTuple certificate_tau(const Multiloop& L, const std::vector<std::vector<Rational>>& s, long field_order = 0);
Verdict verify_supp_certificate(const Multiloop& L, const Multiloop& Lp, const IsoCertificate& c, long field_order = 0);

IsoCertificate certificate_from_toralization(const Multiloop& L, const ToralizationCertificate& t);
// (phi^{-1}, P^{-1}, -P^t s transported to the base of L'); CertificateInvalid if phi does not carry h to h'
IsoCertificate invert_certificate(const Multiloop& L, const Multiloop& Lp, const IsoCertificate& c);

struct ChainStep {
  Regrade regrade;
  Multiloop target;  // materialized multiloop algebra the view must agree with
  std::string what;
};
struct Chain {
  std::vector<long> m_tilde;
  std::vector<ChainStep> steps;
  Multiloop last;  // L_{m'}(g, (tau sigma)^P, h)
  Mat phi;         // Z^n-isograded isomorphism last -> L'
};
Chain chain_from_certificate(const IsoCertificate& c, const Multiloop& L, const Multiloop& Lp);
// every step of the chain agrees with its target on the window and the end map verifies
Verdict verify_chain(const Chain& ch, const Multiloop& L, const Multiloop& Lp, int radius);

// compares the view with a multiloop algebra on all window degrees and every root
Verdict same_on_window(const RegradedView& v, const Multiloop& target, int radius);

struct SearchBounds {
  int p_bound = 2;
  int word_length = 2;
  int s_denominator = 0;  // 0: lcm of m and m'
  long max_checks = 2000000;
};
struct SearchResult {
  std::optional<IsoCertificate> cert;
  long checked = 0;
  std::string note;
};
SearchResult search_certificate(const Multiloop& L, const Multiloop& Lp, const SearchBounds& b = {});

}  // namespace mloop
