#pragma once

#include <string>
#include <vector>

#include "fracslice/sliceops.hpp"

namespace fracslice {

/// %.17g; non-finite values come out as "nan", "inf" or "-inf".
std::string format_double(double v);
/// "[w, x1, x2, x3]" with 17 significant digits per component.
std::string format_quaternion(const Quaternion& q);

/// JSON array of reports; numbers carry 17 significant digits, non-finite
/// values become null. Deterministic: no timestamps, fixed key order.
std::string reports_to_json(const std::vector<VerificationReport>& reports);
/// One row per grid point: identity,variant,u1,u2,u3,x,y,residual,error.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
/// Fixed-width table, one line per identity plus a totals line.
std::string summary_table(const std::vector<VerificationReport>& reports);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fracslice
