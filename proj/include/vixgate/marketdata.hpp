#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vixgate {

// Calendar date of a trading bar. No time-of-day component.
struct TradingDate {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  // Strict ISO-8601 YYYY-MM-DD. Throws DataError on anything else.
  static TradingDate parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const TradingDate&) const = default;
};

enum class SeriesKind { kReturn, kVixLevel, kEquityValue };

std::string_view to_string(SeriesKind kind);

struct Observation {
  TradingDate date;
  double value = 0.0;
};

/// Trading-day indexed series. Dates are strictly increasing. Returns are
/// stored as fractions (-0.10 for -10%). VIX levels are strictly positive.
class DailySeries {
 public:
  DailySeries() = default;

  // Validates the invariants; throws DataError when they do not hold.
  DailySeries(SeriesKind kind, std::vector<TradingDate> dates,
              std::vector<double> values);

  // Sorts by date first. Duplicate dates are rejected with the date named.
  static DailySeries from_observations(SeriesKind kind,
                                       std::vector<Observation> rows);

  SeriesKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const TradingDate> dates() const noexcept { return dates_; }
  std::span<const double> values() const noexcept { return values_; }
  const TradingDate& date(std::size_t i) const { return dates_.at(i); }
  double value(std::size_t i) const { return values_.at(i); }

  // Same dates, new values and kind.
  DailySeries with_values(SeriesKind kind, std::vector<double> values) const;

  bool operator==(const DailySeries&) const = default;

 private:
  SeriesKind kind_ = SeriesKind::kReturn;
  std::vector<TradingDate> dates_;
  std::vector<double> values_;
};

struct LoadOptions {
  // Input values are percentages; divide by 100 on ingestion.
  bool percent = false;
};

// CSV with header `date,value`. `source` names the input in error messages.
DailySeries parse_daily_series(std::istream& in, SeriesKind kind,
                               const LoadOptions& options = {},
                               std::string_view source = "<stream>");
DailySeries load_daily_series(const std::filesystem::path& path,
                              SeriesKind kind,
                              const LoadOptions& options = {});

// Writes `date,value` using the shortest decimal form that round-trips.
void write_daily_series(std::ostream& out, const DailySeries& series);

// Shortest round-trip decimal representation of a finite double.
std::string format_decimal(double value);

struct AlignedPoint {
  TradingDate date;
  double a = 0.0;
  double b = 0.0;
};

// Inner join on date. Throws DataError when the calendars are disjoint.
std::vector<AlignedPoint> align(const DailySeries& a, const DailySeries& b);

// Keeps the observations whose dates appear in `dates` (sorted ascending).
DailySeries restrict_to(const DailySeries& series,
                        std::span<const TradingDate> dates);

enum class OptionSide { kCall, kPut };

struct OptionQuote {
  double strike = 0.0;
  double mid = 0.0;
  OptionSide side = OptionSide::kCall;
};

// One expiry. Chain-level fields come from the caller, the quotes from CSV.
struct OptionChain {
  double expiry_years = 0.0;
  double risk_free_rate = 0.0;
  std::vector<OptionQuote> quotes;
  std::optional<double> atm_call_mid;
  std::optional<double> atm_put_mid;
  std::optional<double> atm_strike_hint;

  // T > 0, strikes positive, midprices non-negative, at least three
  // distinct strikes, no (strike, side) pair quoted twice.
  void validate() const;
};

// CSV with header `strike,side,mid`, side in {C, P}.
std::vector<OptionQuote> parse_option_quotes(std::istream& in,
                                             std::string_view source = "<stream>");
std::vector<OptionQuote> load_option_quotes(const std::filesystem::path& path);

}  // namespace vixgate
