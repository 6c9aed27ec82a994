#include "vixgate/marketdata.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "vixgate/error.hpp"

namespace vixgate {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line_no,
                          const std::string& what) {
  std::ostringstream msg;
  msg << source << ": line " << line_no << ": " << what;
  throw DataError(msg.str());
}

void expect_header(std::istream& in, std::string_view source,
                   std::string_view expected) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(std::string(source) + ": empty file, expected header '" +
                    std::string(expected) + "'");
  }
  if (trim(line) != expected) {
    fail_at(source, 1, "expected header '" + std::string(expected) + "'");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

TradingDate TradingDate::parse(std::string_view text) {
  const auto bad = [&] {
    return DataError("invalid date '" + std::string(text) +
                     "' (expected YYYY-MM-DD)");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  const auto digits = [&](std::size_t pos, std::size_t len) {
    int out = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + pos + len, out);
    if (ec != std::errc{} || ptr != text.data() + pos + len) throw bad();
    return out;
  };
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (text[i] < '0' || text[i] > '9') throw bad();
  }
  TradingDate date{digits(0, 4), static_cast<unsigned>(digits(5, 2)),
                   static_cast<unsigned>(digits(8, 2))};
  const std::chrono::year_month_day ymd{std::chrono::year{date.year},
                                        std::chrono::month{date.month},
                                        std::chrono::day{date.day}};
  if (!ymd.ok()) throw bad();
  return date;
}

std::string TradingDate::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
  return buf;
}

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::kReturn:
      return "return";
    case SeriesKind::kVixLevel:
      return "vix";
    case SeriesKind::kEquityValue:
      return "equity";
  }
  return "unknown";
}

DailySeries::DailySeries(SeriesKind kind, std::vector<TradingDate> dates,
                         std::vector<double> values)
    : kind_(kind), dates_(std::move(dates)), values_(std::move(values)) {
  if (dates_.size() != values_.size()) {
    throw DataError("series has " + std::to_string(dates_.size()) +
                    " dates but " + std::to_string(values_.size()) +
                    " values");
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(dates_[i - 1] < dates_[i])) {
      throw DataError("series dates not strictly increasing at " +
                      dates_[i].to_string());
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("non-finite value on " + dates_[i].to_string());
    }
    if (kind_ == SeriesKind::kVixLevel && values_[i] <= 0.0) {
      throw DataError("nonpositive VIX level on " + dates_[i].to_string());
    }
  }
}

DailySeries DailySeries::from_observations(SeriesKind kind,
                                           std::vector<Observation> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Observation& l, const Observation& r) {
                     return l.date < r.date;
                   });
  std::vector<TradingDate> dates;
  std::vector<double> values;
  dates.reserve(rows.size());
  values.reserve(rows.size());
  for (const auto& row : rows) {
    if (!dates.empty() && dates.back() == row.date) {
      throw DataError("duplicate date " + row.date.to_string());
    }
    dates.push_back(row.date);
    values.push_back(row.value);
  }
  return DailySeries(kind, std::move(dates), std::move(values));
}

DailySeries DailySeries::with_values(SeriesKind kind,
                                     std::vector<double> values) const {
  return DailySeries(kind, dates_, std::move(values));
}

DailySeries parse_daily_series(std::istream& in, SeriesKind kind,
                               const LoadOptions& options,
                               std::string_view source) {
  expect_header(in, source, "date,value");
  std::vector<Observation> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      fail_at(source, line_no,
              "expected 2 columns, found " + std::to_string(fields.size()));
    }
    TradingDate date;
    try {
      date = TradingDate::parse(fields[0]);
    } catch (const DataError& e) {
      fail_at(source, line_no, e.what());
    }
    const auto value = parse_number(fields[1]);
    if (!value) {
      fail_at(source, line_no,
              "unparsable number '" + std::string(fields[1]) + "'");
    }
    if (kind == SeriesKind::kVixLevel && *value <= 0.0) {
      fail_at(source, line_no, "nonpositive VIX level " + std::string(fields[1]));
    }
    rows.push_back({date, options.percent ? *value / 100.0 : *value});
  }
  return DailySeries::from_observations(kind, std::move(rows));
}

DailySeries load_daily_series(const std::filesystem::path& path,
                              SeriesKind kind, const LoadOptions& options) {
  auto in = open_input(path);
  return parse_daily_series(in, kind, options, path.string());
}

std::string format_decimal(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw DataError("cannot format value");
  return std::string(buf, ptr);
}

void write_daily_series(std::ostream& out, const DailySeries& series) {
  out << "date,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.date(i).to_string() << ',' << format_decimal(series.value(i))
        << '\n';
  }
}

std::vector<AlignedPoint> align(const DailySeries& a, const DailySeries& b) {
  std::vector<AlignedPoint> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a.date(i) < b.date(j)) {
      ++i;
    } else if (b.date(j) < a.date(i)) {
      ++j;
    } else {
      out.push_back({a.date(i), a.value(i), b.value(j)});
      ++i;
      ++j;
    }
  }
  if (out.empty()) {
    throw DataError("series share no dates (disjoint calendars)");
  }
  return out;
}

DailySeries restrict_to(const DailySeries& series,
                        std::span<const TradingDate> dates) {
  std::vector<TradingDate> kept_dates;
  std::vector<double> kept_values;
  std::size_t j = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    while (j < dates.size() && dates[j] < series.date(i)) ++j;
    if (j < dates.size() && dates[j] == series.date(i)) {
      kept_dates.push_back(series.date(i));
      kept_values.push_back(series.value(i));
    }
  }
  return DailySeries(series.kind(), std::move(kept_dates),
                     std::move(kept_values));
}

void OptionChain::validate() const {
  if (!(expiry_years > 0.0) || !std::isfinite(expiry_years)) {
    throw InvalidArgument("time to expiry must be positive");
  }
  if (!std::isfinite(risk_free_rate)) {
    throw InvalidArgument("risk-free rate must be finite");
  }
  std::set<std::pair<double, OptionSide>> seen;
  std::set<double> strikes;
  for (const auto& q : quotes) {
    if (!(q.strike > 0.0) || !std::isfinite(q.strike)) {
      throw DataError("strike must be positive, got " + format_decimal(q.strike));
    }
    if (!(q.mid >= 0.0) || !std::isfinite(q.mid)) {
      throw DataError("midprice must be non-negative at strike " +
                      format_decimal(q.strike));
    }
    if (!seen.insert({q.strike, q.side}).second) {
      throw DataError("strike " + format_decimal(q.strike) + " quoted twice for " +
                      (q.side == OptionSide::kCall ? "calls" : "puts"));
    }
    strikes.insert(q.strike);
  }
  if (strikes.size() < 3) {
    throw DataError("option chain needs at least 3 distinct strikes, got " +
                    std::to_string(strikes.size()));
  }
  for (const auto& mid : {atm_call_mid, atm_put_mid}) {
    if (mid && (!(*mid >= 0.0) || !std::isfinite(*mid))) {
      throw InvalidArgument("ATM midprices must be non-negative");
    }
  }
  if (atm_strike_hint && !(*atm_strike_hint > 0.0)) {
    throw InvalidArgument("ATM strike hint must be positive");
  }
}

std::vector<OptionQuote> parse_option_quotes(std::istream& in,
                                             std::string_view source) {
  expect_header(in, source, "strike,side,mid");
  std::vector<OptionQuote> quotes;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      fail_at(source, line_no,
              "expected 3 columns, found " + std::to_string(fields.size()));
    }
    const auto strike = parse_number(fields[0]);
    const auto mid = parse_number(fields[2]);
    if (!strike || !mid) fail_at(source, line_no, "unparsable number");
    if (*strike <= 0.0) fail_at(source, line_no, "strike must be positive");
    if (*mid < 0.0) fail_at(source, line_no, "midprice must be non-negative");
    OptionSide side;
    if (fields[1] == "C") {
      side = OptionSide::kCall;
    } else if (fields[1] == "P") {
      side = OptionSide::kPut;
    } else {
      fail_at(source, line_no,
              "side must be C or P, got '" + std::string(fields[1]) + "'");
    }
    quotes.push_back({*strike, *mid, side});
  }
  return quotes;
}

std::vector<OptionQuote> load_option_quotes(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_option_quotes(in, path.string());
}

}  // namespace vixgate
