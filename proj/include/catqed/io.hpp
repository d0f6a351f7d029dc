#ifndef CATQED_IO_HPP
#define CATQED_IO_HPP

#include <filesystem>
#include <json.hpp>

#include "catqed/entanglement.hpp"
#include "catqed/wigner.hpp"

namespace catqed::io {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed 17-significant-digit formatting so identical inputs give
// byte-identical text outputs.
std::string format_double(double v);

// Angles are numbers in radians, or strings with an explicit unit suffix:
// "90deg" or "1.5708rad".
double parse_angle(const json& v);

// Complex values are {"re": .., "im": ..} objects or plain numbers.
cx parse_complex(const json& v);
json complex_to_json(cx v);

// {alpha1, alpha2, theta1, theta2, delta}
ProtocolConfig parse_protocol_config(const json& doc);
json protocol_config_to_json(const ProtocolConfig& cfg);

json superstate_to_json(const SuperState& s);
SuperState superstate_from_json(const json& doc);

// {outcome, axis1: {name,min,max,steps}, axis2?, fixed: {..}}
SweepSpec parse_sweep_spec(const json& doc);

json convention_to_json(const WignerConvention& c);

std::string sweep_csv(const std::vector<SweepRow>& rows);
json sweep_json(const std::vector<SweepRow>& rows);

// Row-major "x,p,W" rows.
std::string wigner_csv(const WignerField& f);

// Diverging blue-white-red map scaled to max |W|; binary PPM.
void write_ppm(const WignerField& f, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& content);
json read_json_file(const std::filesystem::path& path);

}  // namespace catqed::io

#endif
