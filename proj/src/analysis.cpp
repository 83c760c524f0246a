#include "cca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cca/errors.hpp"
#include "cca/propagator.hpp"
#include "cca/tolerances.hpp"

namespace cca {

bool is_prime(long long p) {
  if (p < 2) {
    return false;
  }
  for (long long d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      return false;
    }
  }
  return true;
}

LengthClass classify_length(int n) {
  if (n < 2) {
    throw InvalidConfigError("length classification needs n >= 2");
  }
  LengthClass out;
  out.n = n;
  if (is_prime(n + 1LL)) {
    out.witnesses.push_back({LengthWitness::Form::prime_minus_one, n + 1LL});
  }
  if ((n + 1) % 2 == 0 && is_prime((n + 1LL) / 2)) {
    out.witnesses.push_back({LengthWitness::Form::twice_prime_minus_one, (n + 1LL) / 2});
  }
  long long power = 2;
  for (int m = 1; power - 1 <= n; ++m, power *= 2) {
    if (power - 1 == n) {
      out.witnesses.push_back({LengthWitness::Form::power_of_two_minus_one, m});
      break;
    }
  }
  out.is_pgst = !out.witnesses.empty();
  return out;
}

ResidualPhase residual_phase_for(int n) {
  if (n < 2) {
    throw InvalidConfigError("residual phase needs n >= 2");
  }
  ResidualPhase out;
  out.n = n;
  switch (n % 4) {
    case 1:
      out.value = {1.0, 0.0};
      out.resolved = true;
      break;
    case 3:
      out.value = {-1.0, 0.0};
      out.resolved = true;
      break;
    default:
      // Even lengths attain +i or -i; the sign is empirical, so without a
      // located transfer window it stays unresolved.
      out.value = {0.0, 1.0};
      out.resolved = false;
      break;
  }
  return out;
}

ResidualPhase residual_phase_for(int n, const TransferWindow& window) {
  ResidualPhase out = residual_phase_for(n);
  if (!out.resolved) {
    out.value = (std::sin(window.phase) >= 0.0) ? std::complex<double>{0.0, 1.0}
                                                : std::complex<double>{0.0, -1.0};
    out.resolved = true;
  }
  return out;
}

namespace {

struct Candidate {
  double time;
  double magnitude;
};

Candidate refine_maximum(const SpectralPropagator& prop, double lo, double hi) {
  constexpr double golden = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - golden * (b - a);
  double d = a + golden * (b - a);
  double fc = prop.end_magnitude(c);
  double fd = prop.end_magnitude(d);
  while (b - a > tol::time_refinement) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - golden * (b - a);
      fc = prop.end_magnitude(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + golden * (b - a);
      fd = prop.end_magnitude(d);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, prop.end_magnitude(mid)};
}

}  // namespace

TransferWindow find_transfer_time(const CavityArray& array, double t_max, int grid) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidConfigError("search window t_max must be > 0");
  }
  if (grid < 100) {
    throw InvalidConfigError("search grid must have at least 100 points");
  }

  const SpectralPropagator prop(array);
  const double step = t_max / grid;
  std::vector<double> mags(grid + 1);
  mags[0] = 0.0;  // the amplitude vanishes at t = 0 for every chain
  for (int i = 1; i <= grid; ++i) {
    mags[i] = prop.end_magnitude(step * i);
  }

  double best_grid = 0.0;
  for (int i = 1; i <= grid; ++i) {
    best_grid = std::max(best_grid, mags[i]);
  }

  // Refine every local maximum close to the best grid value; refining only
  // the single best sample would mis-rank tied lobes sampled off-peak.
  std::vector<Candidate> candidates;
  for (int i = 1; i <= grid; ++i) {
    const double left = mags[i - 1];
    const double right = (i < grid) ? mags[i + 1] : -1.0;
    if (mags[i] >= left && mags[i] >= right && mags[i] >= best_grid - 0.01) {
      const double lo = std::max(step * (i - 1), step * 0.5);
      const double hi = std::min(step * (i + 1), t_max);
      candidates.push_back(refine_maximum(prop, lo, hi));
    }
  }

  Candidate best = candidates.front();
  for (const Candidate& c : candidates) {
    if (c.magnitude > best.magnitude + tol::magnitude_tie ||
        (std::abs(c.magnitude - best.magnitude) <= tol::magnitude_tie && c.time < best.time)) {
      best = c;
    }
  }

  TransferWindow out;
  out.time = best.time;
  out.magnitude = best.magnitude;
  out.phase = std::arg(prop.end_amplitude(best.time));
  return out;
}

double phase_matching_frequency(double tau, double phase_at_tau, int k) {
  if (!(tau > 0.0)) {
    throw InvalidConfigError("transfer time must be > 0");
  }
  if (k < 0) {
    throw InvalidConfigError("frequency index k must be >= 0");
  }
  return (2.0 * std::numbers::pi * k - phase_at_tau) / tau;
}

std::optional<TransferWindow> engineered_exact_window(const CavityArray& array) {
  const int n = array.n_cavities;
  for (int bond = 1; bond < n; ++bond) {
    const double expected = std::sqrt(static_cast<double>(bond) * (n - bond));
    if (std::abs(array.couplings[bond - 1] - expected) > 1e-12 * expected) {
      return std::nullopt;
    }
  }
  constexpr double half_pi = std::numbers::pi / 2.0;
  double phase = 0.0;
  switch ((n - 1) % 4) {
    case 0: phase = 0.0; break;
    case 1: phase = half_pi; break;
    case 2: phase = std::numbers::pi; break;
    default: phase = -half_pi; break;
  }
  TransferWindow out;
  out.time = half_pi;
  out.magnitude = 1.0;
  out.phase = std::remainder(phase + array.omega * half_pi, 2.0 * std::numbers::pi);
  return out;
}

double default_search_window(int n) {
  return 5.0 * n;
}

int default_search_grid(double t_max) {
  return std::max(100, static_cast<int>(std::ceil(t_max / 0.02)));
}

TransferAnalysis analyze_array(const CavityArray& array) {
  TransferAnalysis out;
  out.length_class = classify_length(array.n_cavities);

  CavityArray zero_omega = array;
  zero_omega.omega = 0.0;
  if (auto exact = engineered_exact_window(zero_omega)) {
    out.window = *exact;
  } else {
    const double t_max = default_search_window(array.n_cavities);
    out.window = find_transfer_time(zero_omega, t_max, default_search_grid(t_max));
  }
  out.residual = residual_phase_for(array.n_cavities, out.window);

  for (int k = 0; out.recommended_frequencies.size() < 4 && k < 64; ++k) {
    double freq = phase_matching_frequency(out.window.time, out.window.phase, k);
    if (freq >= -1e-12) {
      out.recommended_frequencies.push_back(std::max(freq, 0.0));
    }
  }
  return out;
}

}  // namespace cca
