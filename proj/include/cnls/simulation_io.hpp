// CSV formatting for the diagnostics time series, and build metadata for the
// run manifest. Formatting goes through %.17g for reproducible bytes.

#pragma once

#include <cstdio>
#include <string>

#include "cnls/config.hpp"
#include "cnls/diagnostics.hpp"

namespace cnls {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Column label for an s value: hs_2, hs_1.5, ...
inline std::string hs_column_name(double s) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "hs_%g", s);
    return buf;
}

inline std::string csv_header(const SimulationConfig& cfg) {
    std::string h = "t,mass,energy,h1";
    for (double s : cfg.s_values) h += "," + hs_column_name(s);
    h += ",e1,e2";
    for (int b : dyadic_blocks_for_band(cfg.band_limit))
        h += ",lp_" + std::to_string(b);
    h += "\n";
    return h;
}

inline std::string csv_row(const DiagnosticsRecord& rec, const SimulationConfig& cfg) {
    std::string row = format_number(rec.t);
    row += "," + format_number(rec.mass);
    row += "," + format_number(rec.energy);
    row += "," + format_number(rec.hs_norms.at(1.0));
    for (double s : cfg.s_values) row += "," + format_number(rec.hs_norms.at(s));
    row += "," + format_number(rec.e1);
    row += ",";
    if (rec.e2) row += format_number(*rec.e2);
    for (int b : dyadic_blocks_for_band(cfg.band_limit)) {
        auto it = rec.lp_spectrum.find(b);
        row += "," + format_number(it == rec.lp_spectrum.end() ? 0.0 : it->second);
    }
    row += "\n";
    return row;
}

inline Json build_info() {
    Json j;
    j["project"] = "cnls";
    j["version"] = "1.0.0";
#if defined(__clang__)
    j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    j["compiler"] = "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#else
    j["compiler"] = "unknown";
#endif
    j["cxx_standard"] = static_cast<long>(__cplusplus);
    return j;
}

}  // namespace cnls
