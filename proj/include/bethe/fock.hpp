#ifndef BETHE_FOCK_HPP
#define BETHE_FOCK_HPP

#include <complex>
#include <compare>
#include <map>
#include <stdexcept>

#include <Eigen/Core>

namespace bethe {

using Complex = std::complex<double>;

/// Occupation numbers of the two bosonic modes.
struct OccPair {
  int n1 = 0;
  int n2 = 0;
  friend auto operator<=>(const OccPair&, const OccPair&) = default;
};

/// Thrown when a creation operator would push the total occupation past the
/// state's cutoff. Every algorithm in this project changes the total number
/// predictably, so overflow always indicates a caller bug.
class CutoffOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse two-mode bosonic state: a map from occupation pairs to complex
/// amplitudes. Values are immutable once built by the operator functions
/// below; copying is cheap at the occupation counts used here.
class TwoModeState {
 public:
  using Map = std::map<OccPair, Complex>;

  explicit TwoModeState(int cutoff, double drop_tol = 0.0);

  int cutoff() const { return cutoff_; }
  double drop_tol() const { return drop_tol_; }
  const Map& amps() const { return amps_; }
  bool is_zero() const { return amps_.empty(); }

  /// Amplitude at an occupation pair, zero if absent.
  Complex amp(OccPair key) const;

  /// Accumulates into an entry; entries at or below the drop tolerance are
  /// removed. Throws CutoffOverflow if the key exceeds the cutoff.
  void accumulate(OccPair key, Complex value);

  TwoModeState& operator+=(const TwoModeState& other);
  TwoModeState& operator-=(const TwoModeState& other);
  TwoModeState& operator*=(Complex scale);

  friend TwoModeState operator+(TwoModeState lhs, const TwoModeState& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend TwoModeState operator-(TwoModeState lhs, const TwoModeState& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend TwoModeState operator*(Complex scale, TwoModeState s) {
    s *= scale;
    return s;
  }

 private:
  Map amps_;
  int cutoff_ = 0;
  double drop_tol_ = 0.0;
};

/// |0,0> with the given cutoff.
TwoModeState vacuum(int cutoff);

/// Basis ket |n1, n2> with the given cutoff.
TwoModeState basis_state(int n1, int n2, int cutoff);

/// a_site^dagger: |n> -> sqrt(n+1) |n+1> on the chosen mode (site is 1 or 2).
TwoModeState apply_create(int site, const TwoModeState& s);

/// a_site: |n> -> sqrt(n) |n-1>.
TwoModeState apply_annihilate(int site, const TwoModeState& s);

/// N_site: |n> -> n |n>.
TwoModeState apply_number(int site, const TwoModeState& s);

/// <bra|ket>, conjugate-linear in the bra.
Complex inner_product(const TwoModeState& bra, const TwoModeState& ket);

/// sqrt(<s|s>)
double norm(const TwoModeState& s);

/// Fixed-total-number sector extraction. Index convention: component k of
/// the result is the amplitude at |k>_1 (x) |total-k>_2.
Eigen::VectorXcd restrict_to_sector(const TwoModeState& s, int total);

/// Inverse of restrict_to_sector on its image (same index convention).
TwoModeState embed_sector(const Eigen::VectorXcd& v, int total, int cutoff);

}  // namespace bethe

#endif
