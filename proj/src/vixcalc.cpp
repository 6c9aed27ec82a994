#include "vixgate/vixcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "vixgate/error.hpp"
#include "vixgate/numeric.hpp"

namespace vixgate {

namespace {

constexpr double kClampTolerance = 1e-12;

struct StrikeQuotes {
  std::optional<double> call;
  std::optional<double> put;
};

std::map<double, StrikeQuotes> by_strike(const OptionChain& chain) {
  std::map<double, StrikeQuotes> grid;
  for (const auto& q : chain.quotes) {
    auto& slot = grid[q.strike];
    (q.side == OptionSide::kCall ? slot.call : slot.put) = q.mid;
  }
  return grid;
}

}  // namespace

AtmReference atm_reference(const OptionChain& chain) {
  const auto grid = by_strike(chain);
  std::optional<double> seed = chain.atm_strike_hint;
  if (!seed) {
    double best_gap = std::numeric_limits<double>::infinity();
    for (const auto& [strike, quotes] : grid) {
      if (quotes.call && quotes.put) {
        const double gap = std::fabs(*quotes.call - *quotes.put);
        if (gap < best_gap) {
          best_gap = gap;
          seed = strike;
        }
      }
    }
    if (!seed) {
      throw InvalidArgument(
          "no strike is quoted on both sides; supply the ATM strike and "
          "ATM call/put midprices");
    }
  }

  std::optional<double> call = chain.atm_call_mid;
  std::optional<double> put = chain.atm_put_mid;
  if (const auto it = grid.find(*seed); it != grid.end()) {
    if (!call) call = it->second.call;
    if (!put) put = it->second.put;
  }
  if (!call || !put) {
    throw InvalidArgument("ATM call and put midprices (C0, P0) are required");
  }
  return {*seed, *call, *put};
}

double forward_price(const OptionChain& chain) {
  chain.validate();
  const auto atm = atm_reference(chain);
  return atm.strike + std::exp(chain.risk_free_rate * chain.expiry_years) *
                          (atm.call_mid - atm.put_mid);
}

VixComputation compute_vix(const OptionChain& chain, const VixOptions& options) {
  chain.validate();
  VixComputation out;
  out.forward = forward_price(chain);

  const auto grid = by_strike(chain);
  auto above = grid.upper_bound(out.forward);
  if (above == grid.begin()) {
    throw DataError("no strike at or below the forward price " +
                    format_decimal(out.forward));
  }
  out.x0 = std::prev(above)->first;

  std::size_t otm_quoted = 0;
  for (const auto& [strike, quotes] : grid) {
    std::optional<double> mid;
    if (strike < out.x0) {
      mid = quotes.put;
    } else if (strike > out.x0) {
      mid = quotes.call;
    } else if (quotes.call && quotes.put) {
      mid = 0.5 * (*quotes.call + *quotes.put);
    } else {
      mid = quotes.call ? quotes.call : quotes.put;
    }
    if (!mid) continue;
    ++otm_quoted;
    // Zero-priced options carry no variance and take no part in the spacing.
    if (*mid > 0.0) out.strikes.push_back({strike, 0.0, *mid});
  }
  if (otm_quoted < 3) {
    throw DataError("need at least 3 out-of-the-money strikes, found " +
                    std::to_string(otm_quoted));
  }

  auto& strip = out.strikes;
  const std::size_t n = strip.size();
  if (n == 1) {
    throw DataError("a single priced strike gives no strike spacing");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? strip[i].strike : strip[i - 1].strike;
    const double hi = i + 1 == n ? strip[i].strike : strip[i + 1].strike;
    if (options.spacing == SpacingRule::kLiteralAverage) {
      strip[i].spacing = (hi + lo) / 2.0;
    } else if (i == 0) {
      strip[i].spacing = hi - strip[i].strike;
    } else if (i + 1 == n) {
      strip[i].spacing = strip[i].strike - lo;
    } else {
      strip[i].spacing = (hi - lo) / 2.0;
    }
  }

  const double T = chain.expiry_years;
  const double growth = std::exp(chain.risk_free_rate * T);
  CompensatedSum sum;
  for (const auto& s : strip) {
    sum.add(s.spacing / (s.strike * s.strike) * growth * s.mid);
  }
  out.strip_term = 2.0 / T * sum.value();
  const double moneyness = out.forward / out.x0 - 1.0;
  out.forward_correction = moneyness * moneyness / T;

  double variance = out.strip_term - out.forward_correction;
  if (variance < 0.0) {
    if (variance < -kClampTolerance) {
      throw DegenerateError("negative variance " + format_decimal(variance) +
                            " (inconsistent quotes)");
    }
    variance = 0.0;
  }
  out.sigma_squared = variance;
  out.vix_level = 100.0 * std::sqrt(variance);
  return out;
}

}  // namespace vixgate
