#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "nonlocal/harness.hpp"

namespace nonlocal::csv {

inline constexpr std::string_view kSweepHeader =
    "delta,h,m,s,k,lambda,rescaled,reference,abs_err,rel_err";
inline constexpr std::string_view kSolveHeader = "i,x,u";
inline constexpr std::string_view kConstantsHeader = "N,s,c_ns,kappa,sigma,gamma";
inline constexpr std::string_view kCheckHeader = "delta,ratio,C_delta,pass";

/// Shortest decimal that reads back to the same double ("nan", "inf" for
/// non-finite values).
std::string format(double value);
std::string format(std::int64_t value);

void write_sweep(std::ostream& out, std::span<const SweepRow> rows);
void write_check(std::ostream& out, std::span<const CDeltaRow> rows);

}  // namespace nonlocal::csv
