#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "darkcavity/feshbach2d.hpp"
#include "darkcavity/polariton.hpp"
#include "darkcavity/potentials.hpp"
#include "darkcavity/resonance.hpp"

namespace darkcavity {

// Shortest round-trip decimal representation; CSV bodies must be
// byte-identical across runs for identical inputs.
std::string format_double(double v);

// header: index,E_hartree,Gamma_hartree,nodes,class (ascending width)
std::string pole_set_csv(const PoleSet& poles);

// header: epsilon_au,gamma_hartree,energy_hartree with '#' metadata lines
std::string rate_scan_csv(const RateScan& scan);

// header: pair,E1d,Gamma1d,E2d,Gamma2d,relE,relGamma plus a summary footer
std::string agreement_csv(const AgreementReport& report);

// x_bohr,re_psi,im_psi,abs2_psi for one c-normalized pole
std::string wavefunction_csv(const ResonancePole& pole, const Grid& grid);

// Gnuplot script reproducing the rate-vs-coupling figure layout.
std::string rate_scan_plot_script(const std::string& csv_name, const RateScan& scan);

// Two-column table x_bohr,value_hartree; '#' lines are comments.
TabulatedCurve read_tabulated_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& body);

}  // namespace darkcavity
