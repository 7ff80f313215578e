#ifndef DAVIES_MODELS_HPP
#define DAVIES_MODELS_HPP

#include <optional>
#include <string>
#include <vector>

#include "davies/liouvillian.hpp"

namespace davies {

// Single-spin operators in the basis {|up>, |down>}.
namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();   // |up><down|
ComplexMatrix minus();  // |down><up|
ComplexMatrix up();     // |up><up|
ComplexMatrix down();   // |down><down|
}  // namespace pauli

/// 1 (x) ... (x) op (x) ... (x) 1 on n spins; site 1 is the leftmost factor.
ComplexMatrix site_operator(int n, int site, const ComplexMatrix& op);

/// Two-level system with H = h sigma^x.
LindbladSystem two_level(double h, std::vector<ComplexMatrix> lindblads);

/// Two spins, H = 0, dephasing on both sites plus the four conditional flips.
LindbladSystem two_site_ferromagnet();

enum class BoundaryConditions { Open, Periodic };
enum class DissipatorKind { Gain, Loss, Dephase };

struct Dissipator {
    int site = 1;
    DissipatorKind kind = DissipatorKind::Gain;
    double rate = 1.0;
};

/**
 * H = sum_i h_i sz_i + sum_bonds (Jx_b sx sx + Jy_b sy sy + Jz_b sz sz).
 * Bond b couples sites b and b+1; a periodic chain has an extra bond (n, 1)
 * stored last. Dissipators are sqrt(rate) sigma^+, sigma^- or sigma^z.
 */
struct SpinChainSpec {
    int n_sites = 1;
    std::vector<double> h;
    std::vector<double> jx, jy, jz;
    BoundaryConditions boundary = BoundaryConditions::Open;
    std::vector<Dissipator> dissipators;

    std::size_t bond_count() const;
    /// Throws std::invalid_argument when lengths, sites or rates are inconsistent.
    void validate() const;
};

LindbladSystem xyz_chain(const SpinChainSpec& spec);

/// Uniform-coupling chain with gain sqrt(gp) sigma^+_1 and loss sqrt(gm) sigma^-_site.
SpinChainSpec uniform_chain(int n, double h, double jx, double jy, double jz, double gp, double gm, int loss_site);

/// H = h sum sz + J sum sx sx; gain and loss on site 1 (`loss_site` 1) or loss on site n.
LindbladSystem transverse_ising(int n, double h, double j, double gp, double gm, int loss_site = 1);

/// H = h sum sz + J sum (sx sx + sy sy); gain on site 1, loss on site n.
LindbladSystem xx_chain(int n, double h, double j, double gp, double gm);

/// H = J sum (sx sx + sy sy + delta sz sz); gain on site 1, loss on site n.
LindbladSystem xxz_chain(int n, double j, double delta, double gp, double gm);

/// Parameters for make_preset(); unset fields take the preset's default.
struct PresetParams {
    std::optional<double> h;
    std::optional<double> j;
    std::optional<double> delta;
    std::optional<double> gp;
    std::optional<double> gm;
    std::optional<int> n;
};

/// Canonical preset names.
std::vector<std::string> preset_names();

/// Lowercase, '_' mapped to '-'. Unknown names are returned unchanged.
std::string normalize_preset_name(const std::string& name);

/// Throws std::invalid_argument for an unknown name or invalid parameters.
LindbladSystem make_preset(const std::string& name, const PresetParams& params = {});

}  // namespace davies

#endif
