#include "cca/lattice.hpp"

#include <cmath>
#include <string>

#include "cca/errors.hpp"

namespace cca {

CavityArray make_cavity_array(int n, std::vector<double> couplings, double omega) {
  if (n < 2) {
    throw InvalidConfigError("cavity array needs at least 2 cavities, got " + std::to_string(n));
  }
  if (couplings.size() != static_cast<std::size_t>(n - 1)) {
    throw InvalidConfigError("expected " + std::to_string(n - 1) + " couplings, got " +
                             std::to_string(couplings.size()));
  }
  for (double j : couplings) {
    if (!(j > 0.0) || !std::isfinite(j)) {
      throw InvalidConfigError("couplings must be strictly positive and finite");
    }
  }
  if (!std::isfinite(omega) || omega < 0.0) {
    throw InvalidConfigError("omega must be finite and >= 0");
  }
  return CavityArray{n, std::move(couplings), omega};
}

CavityArray build_uniform(int n, double j, double omega) {
  if (!(j > 0.0)) {
    throw InvalidConfigError("uniform coupling must be > 0");
  }
  if (n < 2) {
    throw InvalidConfigError("cavity array needs at least 2 cavities, got " + std::to_string(n));
  }
  return make_cavity_array(n, std::vector<double>(n - 1, j), omega);
}

CavityArray build_modulated(int n, int k, double omega) {
  if (n < 2) {
    throw InvalidConfigError("cavity array needs at least 2 cavities, got " + std::to_string(n));
  }
  if (k < 0) {
    throw InvalidConfigError("modulation index k must be >= 0");
  }
  std::vector<double> couplings(n - 1);
  for (int bond = 1; bond < n; ++bond) {
    if (bond % 2 == 0) {
      couplings[bond - 1] = std::sqrt(double(bond) * double(n - bond));
    } else {
      couplings[bond - 1] = std::sqrt(double(bond + 2 * k) * double(n - bond + 2 * k));
    }
  }
  return make_cavity_array(n, std::move(couplings), omega);
}

CavityArray build_ballistic(int n, double j_end, double j_bulk, double omega) {
  if (!(j_end > 0.0) || !(j_end < 1.0)) {
    throw InvalidConfigError("end coupling must lie in (0,1)");
  }
  if (!(j_bulk > 0.0)) {
    throw InvalidConfigError("bulk coupling must be > 0");
  }
  if (n < 2) {
    throw InvalidConfigError("cavity array needs at least 2 cavities, got " + std::to_string(n));
  }
  std::vector<double> couplings(n - 1, j_bulk);
  couplings.front() = j_end;
  couplings.back() = j_end;
  return make_cavity_array(n, std::move(couplings), omega);
}

bool is_mirror_symmetric(const CavityArray& array) {
  const auto& j = array.couplings;
  for (std::size_t i = 0, m = j.size(); i < m / 2; ++i) {
    if (j[i] != j[m - 1 - i]) {
      return false;
    }
  }
  return true;
}

}  // namespace cca
