#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spincorr/analytics.hpp"
#include "spincorr/correlation.hpp"
#include "spincorr/hv_models.hpp"
#include "spincorr/optimizer.hpp"

namespace spincorr {

inline constexpr int kSchemaVersion = 1;

// Doubles are written with 17 significant digits so that parsing the text
// back reproduces the exact bit pattern.
std::string format_double(double v);

// Correlation CSV: header `t_rad,c_value,std_err`, one row per grid point.
void write_correlation_csv(const CorrelationFunction& c, const std::string& path);
CorrelationFunction read_correlation_csv(const std::string& path);

nlohmann::json spectrum_to_json(const FourierSpectrum& s);
FourierSpectrum spectrum_from_json(const nlohmann::json& j);

nlohmann::json bound_check_to_json(const BoundCheckReport& r);
nlohmann::json distance_report_to_json(const DistanceReport& r);
nlohmann::json optimization_to_json(const OptimizationResult& r);
nlohmann::json infeasibility_to_json(const InfeasibleConstraints& e);
nlohmann::json inequality_to_json(const InequalityCheck& r, double theta1, double theta2);
nlohmann::json chsh_to_json(double s, double a, double a2, double b, double b2);
nlohmann::json verdict_to_json(const TestVerdict& v);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace spincorr
