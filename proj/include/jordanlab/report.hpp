#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jordanlab {

/// One verified identity. For negative controls `expected_failure` inverts
/// the meaning of the residual: the control passes when the defect shows.
struct CheckRecord {
    std::string check_name;
    std::string algebra;
    std::uint64_t seed = 0;
    double residual = 0.0;
    bool pass = false;
    std::string detail;
    bool expected_failure = false;
};

[[nodiscard]] CheckRecord make_record(std::string check_name, std::string algebra, std::uint64_t seed,
                                      double residual, double threshold, std::string detail = {});

[[nodiscard]] CheckRecord make_control_record(std::string check_name, std::string algebra, std::uint64_t seed,
                                              double residual, bool flagged, std::string detail = {});

[[nodiscard]] bool all_pass(const std::vector<CheckRecord>& records);

}  // namespace jordanlab
