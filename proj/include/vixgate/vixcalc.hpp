#pragma once

#include <vector>

#include "vixgate/marketdata.hpp"

namespace vixgate {

// How the strike spacing of each strip member is formed.
enum class SpacingRule {
  // (x[i+1] - x[i-1]) / 2 inside the strip, one-sided at both ends.
  kHalfDifference,
  // (x[i+1] + x[i-1]) / 2 as literally printed; the missing neighbour at
  // either end is replaced by the strike itself. Comparison use only.
  kLiteralAverage,
};

struct VixOptions {
  SpacingRule spacing = SpacingRule::kHalfDifference;
};

// The ATM strike and midprices used to seed the forward.
struct AtmReference {
  double strike = 0.0;
  double call_mid = 0.0;
  double put_mid = 0.0;
};

struct StripStrike {
  double strike = 0.0;
  double spacing = 0.0;
  double mid = 0.0;
};

struct VixComputation {
  double sigma_squared = 0.0;
  double vix_level = 0.0;
  double forward = 0.0;
  double x0 = 0.0;
  // (2/T) * sum(dx/x^2 * e^{rT} * V) and (1/T) * (F/x0 - 1)^2.
  double strip_term = 0.0;
  double forward_correction = 0.0;
  std::vector<StripStrike> strikes;  // ascending
};

// Seed strike is the hint when given, otherwise the strike quoted on both
// sides with the smallest |C - P|. Explicit ATM midprices win over quotes at
// the seed strike; if neither exists the call fails with InvalidArgument.
AtmReference atm_reference(const OptionChain& chain);

// F = seed + e^{rT} (C0 - P0).
double forward_price(const OptionChain& chain);

/// Variance-strip VIX for a single expiry.
///
/// x0 is the largest quoted strike <= F. Puts below x0, calls above x0 and
/// the call/put average at x0 form the strip; at least three such strikes
/// must be quoted. Zero-priced quotes are dropped before spacings are formed.
/// Terms are summed in ascending strike order with compensated accumulation. A negative variance within 1e-12 of
/// zero is clamped; anything more negative raises DegenerateError.
VixComputation compute_vix(const OptionChain& chain,
                           const VixOptions& options = {});

}  // namespace vixgate
