#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kerrsq/sweep.hpp"

namespace kerrsq {

/// Shortest decimal form that round-trips to the same double (at most 17 significant
/// digits), '.' as decimal point.
std::string format_number(double value);

/// Long-form CSV with a header row and LF line endings.
///   fig1:      psi0,omega_reduced,S
///   fig2:      psi0,phi,Q,masked      (masked cells: empty Q, masked=1)
///   spectrum:  omega_reduced,S
///   bandwidth: lower,upper,upper_at_scan_limit
///   mandel:    psi0,phi,Q,masked
std::string render_csv(const ResultEnvelope& envelope);

/// The envelope as pretty-printed JSON, newline terminated.
std::string render_json(const ResultEnvelope& envelope);

/// Self-contained gnuplot script drawing the surface (or spectrum line) into
/// `<image_stem>.png`. Throws ConfigError for payloads without a plot.
std::string render_plotscript(const ResultEnvelope& envelope, const std::string& image_stem);

std::filesystem::path output_path(const std::string& prefix, OutputFormat format);

/// Writes one file per format next to `prefix`, creating parent directories.
/// Returns the paths written, in format order.
std::vector<std::filesystem::path> emit(const ResultEnvelope& envelope, const std::string& prefix,
                                        const std::vector<OutputFormat>& formats);

}  // namespace kerrsq
