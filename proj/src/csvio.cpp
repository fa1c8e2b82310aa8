#include "darkcavity/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "darkcavity/errors.hpp"

namespace darkcavity {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string pole_set_csv(const PoleSet& poles) {
  std::ostringstream out;
  out << "# " << poles.provenance << "\n";
  out << "index,E_hartree,Gamma_hartree,nodes,class\n";
  int index = 0;
  for (const auto& pole : poles.poles) {
    out << index++ << ',' << format_double(pole.energy) << ','
        << format_double(pole.width) << ',' << pole.node_count << ','
        << to_string(pole.classification) << "\n";
  }
  return out.str();
}

std::string rate_scan_csv(const RateScan& scan) {
  std::ostringstream out;
  out << "# omega_cav_hartree=" << format_double(scan.omega_cav) << "\n";
  out << "# mirror_distance_bohr=" << format_double(scan.mirror_distance) << "\n";
  out << "# mirror_area_bohr2=" << format_double(scan.mirror_area) << "\n";
  out << "# n_molecules=" << scan.n_molecules << "\n";
  out << "# dipole_au=" << format_double(scan.dipole.real()) << ","
      << format_double(scan.dipole.imag()) << "\n";
  out << "# poles: " << scan.provenance << "\n";
  out << "epsilon_au,gamma_hartree,energy_hartree\n";
  for (const auto& s : scan.samples)
    out << format_double(s.epsilon) << ',' << format_double(s.gamma) << ','
        << format_double(s.energy) << "\n";
  return out.str();
}

std::string agreement_csv(const AgreementReport& report) {
  std::ostringstream out;
  out << "pair,E1d,Gamma1d,E2d,Gamma2d,relE,relGamma\n";
  int index = 0;
  for (const auto& p : report.pairs)
    out << index++ << ',' << format_double(p.e_1d) << ',' << format_double(p.gamma_1d)
        << ',' << format_double(p.e_2d) << ',' << format_double(p.gamma_2d) << ','
        << format_double(p.rel_position) << ',' << format_double(p.rel_width) << "\n";
  out << "# summary: max_relE=" << format_double(report.max_rel_position)
      << " mean_relE=" << format_double(report.mean_rel_position)
      << " max_relGamma=" << format_double(report.max_rel_width)
      << " mean_relGamma=" << format_double(report.mean_rel_width)
      << " unmatched_1d=" << report.unmatched_1d.size()
      << " unmatched_2d=" << report.unmatched_2d.size() << "\n";
  return out.str();
}

std::string wavefunction_csv(const ResonancePole& pole, const Grid& grid) {
  if (pole.wavefunction.size() != grid.n_points)
    throw GridMismatch("wavefunction_csv: grid mismatch");
  std::ostringstream out;
  out << "# E=" << format_double(pole.energy) << " Gamma=" << format_double(pole.width)
      << " nodes=" << pole.node_count << " class=" << to_string(pole.classification)
      << " theta=" << format_double(pole.theta_used) << "\n";
  out << "x_bohr,re_psi,im_psi,abs2_psi\n";
  for (int k = 0; k < grid.n_points; ++k) {
    const Complex v = pole.wavefunction[k];
    out << format_double(grid.point(k)) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << ',' << format_double(std::norm(v)) << "\n";
  }
  return out.str();
}

std::string rate_scan_plot_script(const std::string& csv_name, const RateScan& scan) {
  std::ostringstream out;
  out << "# gnuplot script: reaction rate vs cavity coupling strength\n";
  out << "set datafile separator ','\n";
  out << "set xlabel 'epsilon_cav (a.u.)'\n";
  out << "set ylabel 'Gamma_polariton (Hartree)'\n";
  out << "set format y '%.3e'\n";
  out << "set key left top\n";
  out << "set title 'omega_cav = " << format_double(scan.omega_cav) << " Hartree'\n";
  out << "plot '" << csv_name
      << "' every ::1 using 1:2 with linespoints title 'Gamma_polariton'\n";
  return out.str();
}

TabulatedCurve read_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_tabulated_csv: cannot open " + path.string());
  std::vector<TabulatedCurve::Sample> samples;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      // Required header x_bohr,value_hartree.
      std::string compact;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
      if (compact != "x_bohr,value_hartree")
        throw IoError("read_tabulated_csv: expected header 'x_bohr,value_hartree', got '" +
                      line + "'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError("read_tabulated_csv: malformed row '" + line + "'");
    try {
      TabulatedCurve::Sample s;
      s.x = std::stod(line.substr(0, comma));
      s.value = std::stod(line.substr(comma + 1));
      samples.push_back(s);
    } catch (const std::exception&) {
      throw IoError("read_tabulated_csv: malformed row '" + line + "'");
    }
  }
  if (!header_seen) throw IoError("read_tabulated_csv: missing header");
  return make_tabulated_curve(std::move(samples));
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_text_file: cannot open " + path.string());
  out << body;
  if (!out) throw IoError("write_text_file: write failed for " + path.string());
}

}  // namespace darkcavity
