#include "nonlocal/csv.hpp"

#include <charconv>
#include <cmath>

namespace nonlocal::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string format(std::int64_t value) {
  char buf[24];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format(r.delta) << ',' << format(r.h) << ',' << format(r.m) << ',' << format(r.s) << ','
        << format(std::int64_t{r.k}) << ',' << format(r.lambda) << ',' << format(r.rescaled) << ','
        << format(r.reference) << ',' << format(r.abs_err) << ',' << format(r.rel_err) << '\n';
  }
}

void write_check(std::ostream& out, std::span<const CDeltaRow> rows) {
  out << kCheckHeader << '\n';
  for (const CDeltaRow& r : rows) {
    out << format(r.delta) << ',' << format(r.ratio) << ',' << format(r.c_delta) << ','
        << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace nonlocal::csv
