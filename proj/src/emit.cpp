#include "kerrsq/emit.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace kerrsq {

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buffer, end);
}

namespace {

struct CsvWriter {
  std::ostringstream& out;

  void operator()(const SpectrumSurface& s) const {
    out << "psi0,omega_reduced,S\n";
    for (Eigen::Index r = 0; r < s.values.rows(); ++r)
      for (Eigen::Index c = 0; c < s.values.cols(); ++c)
        out << format_number(s.psi0_axis[r]) << ',' << format_number(s.omega_axis[c]) << ','
            << format_number(s.values(r, c)) << '\n';
  }
  void operator()(const QSurface& s) const {
    out << "psi0,phi,Q,masked\n";
    for (Eigen::Index r = 0; r < s.values.rows(); ++r)
      for (Eigen::Index c = 0; c < s.values.cols(); ++c) {
        out << format_number(s.psi0_axis[r]) << ',' << format_number(s.phi_axis[c]) << ',';
        if (s.masked(r, c))
          out << ",1\n";
        else
          out << format_number(s.values(r, c)) << ",0\n";
      }
  }
  void operator()(const SpectrumLine& s) const {
    out << "omega_reduced,S\n";
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
      out << format_number(s.omega_axis[i]) << ',' << format_number(s.values[i]) << '\n';
  }
  void operator()(const BandwidthResult& b) const {
    out << "lower,upper,upper_at_scan_limit\n";
    for (const auto& band : b.bands)
      out << format_number(band.lower) << ',' << format_number(band.upper) << ',' << (band.upper_at_scan_limit ? 1 : 0)
          << '\n';
  }
  void operator()(const MandelPoint& m) const {
    out << "psi0,phi,Q,masked\n" << format_number(m.psi0) << ',' << format_number(m.phi) << ',' << format_number(m.Q)
        << ",0\n";
  }
};

void write_block(std::ostringstream& out, const char* name, const auto& rows, const auto& cols, const auto& cell) {
  out << '$' << name << " << EOD\n";
  for (Eigen::Index r = 0; r < rows.size(); ++r) {
    for (Eigen::Index c = 0; c < cols.size(); ++c)
      out << format_number(rows[r]) << ' ' << format_number(cols[c]) << ' ' << cell(r, c) << '\n';
    out << '\n';
  }
  out << "EOD\n\n";
}

}  // namespace

std::string render_csv(const ResultEnvelope& envelope) {
  std::ostringstream out;
  std::visit(CsvWriter{out}, envelope.payload);
  return out.str();
}

std::string render_json(const ResultEnvelope& envelope) { return to_json(envelope).dump(2) + "\n"; }

std::string render_plotscript(const ResultEnvelope& envelope, const std::string& image_stem) {
  std::ostringstream out;
  out << "# gnuplot script generated by kerrsq " << envelope.tool_version << "\n"
      << "# content hash " << envelope.content_hash << "\n"
      << "set terminal pngcairo size 1000,750\n"
      << "set output '" << image_stem << ".png'\n";

  if (const auto* s = std::get_if<SpectrumSurface>(&envelope.payload)) {
    write_block(out, "surface", s->psi0_axis, s->omega_axis,
                [&](Eigen::Index r, Eigen::Index c) { return format_number(s->values(r, c)); });
    out << "set title 'S at t = 0'\n"
        << "set xlabel 'psi'\nset ylabel 'Omega'\nset zlabel 'S'\n"
        << "set pm3d\nset hidden3d\nset view 60,30\n"
        << "splot $surface using 1:2:3 with pm3d notitle\n";
  } else if (const auto* q = std::get_if<QSurface>(&envelope.payload)) {
    write_block(out, "surface", q->psi0_axis, q->phi_axis, [&](Eigen::Index r, Eigen::Index c) {
      return q->masked(r, c) ? std::string("NaN") : format_number(q->values(r, c));
    });
    out << "set datafile missing 'NaN'\n"
        << "set title 'Q(0,z)'\n"
        << "set xlabel 'psi(0)'\nset ylabel 'phi(z)'\nset zlabel 'Q'\n"
        << "set pm3d\nset hidden3d\nset view 60,30\n"
        << "splot $surface using 1:2:3 with pm3d notitle\n";
  } else if (const auto* line = std::get_if<SpectrumLine>(&envelope.payload)) {
    out << "$spectrum << EOD\n";
    for (Eigen::Index i = 0; i < line->values.size(); ++i)
      out << format_number(line->omega_axis[i]) << ' ' << format_number(line->values[i]) << '\n';
    out << "EOD\n\n"
        << "set xlabel 'Omega'\nset ylabel 'S'\n"
        << "plot $spectrum using 1:2 with lines title 'S', 0.25 with lines dashtype 2 title 'shot noise'\n";
  } else {
    throw ConfigError("output.formats", "plotscript is only available for spectrum, fig1 and fig2");
  }
  return out.str();
}

std::filesystem::path output_path(const std::string& prefix, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv:
      return prefix + ".csv";
    case OutputFormat::json:
      return prefix + ".json";
    case OutputFormat::plotscript:
      return prefix + ".gp";
  }
  return prefix;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.parent_path().string() + ": " + ec.message());
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path.string() + ": cannot open for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file) throw IoError(path.string() + ": write failed");
}

}  // namespace

std::vector<std::filesystem::path> emit(const ResultEnvelope& envelope, const std::string& prefix,
                                        const std::vector<OutputFormat>& formats) {
  std::vector<std::filesystem::path> written;
  for (const OutputFormat format : formats) {
    const auto path = output_path(prefix, format);
    switch (format) {
      case OutputFormat::csv:
        write_file(path, render_csv(envelope));
        break;
      case OutputFormat::json:
        write_file(path, render_json(envelope));
        break;
      case OutputFormat::plotscript:
        write_file(path, render_plotscript(envelope, std::filesystem::path(prefix).filename().string()));
        break;
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace kerrsq
