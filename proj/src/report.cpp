#include "jordanlab/report.hpp"

#include <algorithm>
#include <cmath>

namespace jordanlab {

CheckRecord make_record(std::string check_name, std::string algebra, std::uint64_t seed, double residual,
                        double threshold, std::string detail) {
    CheckRecord r;
    r.check_name = std::move(check_name);
    r.algebra = std::move(algebra);
    r.seed = seed;
    r.residual = residual;
    r.pass = std::isfinite(residual) && residual <= threshold;
    r.detail = std::move(detail);
    return r;
}

CheckRecord make_control_record(std::string check_name, std::string algebra, std::uint64_t seed, double residual,
                                bool flagged, std::string detail) {
    CheckRecord r;
    r.check_name = std::move(check_name);
    r.algebra = std::move(algebra);
    r.seed = seed;
    r.residual = residual;
    r.pass = flagged;
    r.detail = std::move(detail);
    r.expected_failure = true;
    return r;
}

bool all_pass(const std::vector<CheckRecord>& records) {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

}  // namespace jordanlab
