#include "bethe/fock.hpp"

#include <cmath>
#include <string>

namespace bethe {

namespace {

void check_site(int site) {
  if (site != 1 && site != 2) {
    throw std::invalid_argument("mode index must be 1 or 2, got " + std::to_string(site));
  }
}

}  // namespace

TwoModeState::TwoModeState(int cutoff, double drop_tol) : cutoff_(cutoff), drop_tol_(drop_tol) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  if (drop_tol < 0) throw std::invalid_argument("drop tolerance must be nonnegative");
}

Complex TwoModeState::amp(OccPair key) const {
  auto it = amps_.find(key);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

void TwoModeState::accumulate(OccPair key, Complex value) {
  if (key.n1 < 0 || key.n2 < 0) throw std::invalid_argument("negative occupation");
  if (key.n1 + key.n2 > cutoff_) {
    throw CutoffOverflow("occupation (" + std::to_string(key.n1) + "," + std::to_string(key.n2) +
                         ") exceeds cutoff " + std::to_string(cutoff_));
  }
  auto [it, inserted] = amps_.try_emplace(key, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) <= drop_tol_) amps_.erase(it);
}

TwoModeState& TwoModeState::operator+=(const TwoModeState& other) {
  for (const auto& [key, value] : other.amps()) accumulate(key, value);
  return *this;
}

TwoModeState& TwoModeState::operator-=(const TwoModeState& other) {
  for (const auto& [key, value] : other.amps()) accumulate(key, -value);
  return *this;
}

TwoModeState& TwoModeState::operator*=(Complex scale) {
  if (scale == Complex{0.0, 0.0}) {
    amps_.clear();
    return *this;
  }
  for (auto& [key, value] : amps_) value *= scale;
  return *this;
}

TwoModeState vacuum(int cutoff) { return basis_state(0, 0, cutoff); }

TwoModeState basis_state(int n1, int n2, int cutoff) {
  TwoModeState s(cutoff);
  s.accumulate({n1, n2}, Complex{1.0, 0.0});
  return s;
}

TwoModeState apply_create(int site, const TwoModeState& s) {
  check_site(site);
  TwoModeState out(s.cutoff(), s.drop_tol());
  for (const auto& [key, value] : s.amps()) {
    OccPair raised = key;
    int& n = (site == 1) ? raised.n1 : raised.n2;
    const double factor = std::sqrt(static_cast<double>(n + 1));
    ++n;
    out.accumulate(raised, factor * value);
  }
  return out;
}

TwoModeState apply_annihilate(int site, const TwoModeState& s) {
  check_site(site);
  TwoModeState out(s.cutoff(), s.drop_tol());
  for (const auto& [key, value] : s.amps()) {
    OccPair lowered = key;
    int& n = (site == 1) ? lowered.n1 : lowered.n2;
    if (n == 0) continue;
    const double factor = std::sqrt(static_cast<double>(n));
    --n;
    out.accumulate(lowered, factor * value);
  }
  return out;
}

TwoModeState apply_number(int site, const TwoModeState& s) {
  check_site(site);
  TwoModeState out(s.cutoff(), s.drop_tol());
  for (const auto& [key, value] : s.amps()) {
    const int n = (site == 1) ? key.n1 : key.n2;
    if (n == 0) continue;
    out.accumulate(key, static_cast<double>(n) * value);
  }
  return out;
}

Complex inner_product(const TwoModeState& bra, const TwoModeState& ket) {
  // Walk the smaller map, look up in the larger.
  const bool bra_smaller = bra.amps().size() <= ket.amps().size();
  const TwoModeState& walk = bra_smaller ? bra : ket;
  const TwoModeState& other = bra_smaller ? ket : bra;
  Complex total{0.0, 0.0};
  for (const auto& [key, value] : walk.amps()) {
    const Complex partner = other.amp(key);
    total += bra_smaller ? std::conj(value) * partner : std::conj(partner) * value;
  }
  return total;
}

double norm(const TwoModeState& s) {
  double sum = 0.0;
  for (const auto& [key, value] : s.amps()) sum += std::norm(value);
  return std::sqrt(sum);
}

Eigen::VectorXcd restrict_to_sector(const TwoModeState& s, int total) {
  if (total < 0) throw std::invalid_argument("sector label must be nonnegative");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total + 1);
  for (int k = 0; k <= total; ++k) v[k] = s.amp({k, total - k});
  return v;
}

TwoModeState embed_sector(const Eigen::VectorXcd& v, int total, int cutoff) {
  if (static_cast<int>(v.size()) != total + 1) {
    throw std::invalid_argument("sector vector length must be total+1");
  }
  TwoModeState s(cutoff);
  for (int k = 0; k <= total; ++k) {
    if (v[k] != Complex{0.0, 0.0}) s.accumulate({k, total - k}, v[k]);
  }
  return s;
}

}  // namespace bethe
