#include "davies/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>

namespace davies {

namespace pauli {

namespace {
ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}
}  // namespace

ComplexMatrix x() { return m2(0.0, 1.0, 1.0, 0.0); }
ComplexMatrix y() { return m2(0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0); }
ComplexMatrix z() { return m2(1.0, 0.0, 0.0, -1.0); }
ComplexMatrix plus() { return m2(0.0, 1.0, 0.0, 0.0); }
ComplexMatrix minus() { return m2(0.0, 0.0, 1.0, 0.0); }
ComplexMatrix up() { return m2(1.0, 0.0, 0.0, 0.0); }
ComplexMatrix down() { return m2(0.0, 0.0, 0.0, 1.0); }

}  // namespace pauli

ComplexMatrix site_operator(int n, int site, const ComplexMatrix& op) {
    if (n < 1) throw std::invalid_argument("site_operator: n must be at least 1");
    if (site < 1 || site > n) throw std::invalid_argument("site_operator: site out of range");
    if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("site_operator: op must be 2x2");
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int s = 1; s <= n; ++s) out = tensor(out, s == site ? op : identity(2));
    return out;
}

LindbladSystem two_level(double h, std::vector<ComplexMatrix> lindblads) {
    for (const auto& l : lindblads) {
        if (l.rows() != 2 || l.cols() != 2) throw std::invalid_argument("two_level: Lindblad operators must be 2x2");
    }
    return LindbladSystem(h * pauli::x(), std::move(lindblads));
}

LindbladSystem two_site_ferromagnet() {
    using namespace pauli;
    auto on = [](int site, const ComplexMatrix& op) { return site_operator(2, site, op); };
    std::vector<ComplexMatrix> ls{
        on(1, z()),
        on(2, z()),
        on(1, up()) * on(2, plus()),
        on(1, down()) * on(2, minus()),
        on(2, up()) * on(1, plus()),
        on(2, down()) * on(1, minus()),
    };
    return LindbladSystem(ComplexMatrix::Zero(4, 4), std::move(ls));
}

std::size_t SpinChainSpec::bond_count() const {
    if (n_sites < 2) return 0;
    const auto n = static_cast<std::size_t>(n_sites);
    return boundary == BoundaryConditions::Open ? n - 1 : n;
}

void SpinChainSpec::validate() const {
    if (n_sites < 1) throw std::invalid_argument("SpinChainSpec: n_sites must be at least 1");
    if (n_sites > 12) throw std::invalid_argument("SpinChainSpec: n_sites above 12 is out of dense range");
    if (h.size() != static_cast<std::size_t>(n_sites)) throw std::invalid_argument("SpinChainSpec: h must have n_sites entries");
    const std::size_t nb = bond_count();
    if (jx.size() != nb || jy.size() != nb || jz.size() != nb) {
        throw std::invalid_argument("SpinChainSpec: coupling lists must have one entry per bond");
    }
    for (const auto* list : {&h, &jx, &jy, &jz}) {
        for (double v : *list) {
            if (!std::isfinite(v)) throw std::invalid_argument("SpinChainSpec: non-finite field or coupling");
        }
    }
    for (const auto& d : dissipators) {
        if (d.site < 1 || d.site > n_sites) throw std::invalid_argument("SpinChainSpec: dissipator site out of range");
        if (!(d.rate >= 0.0) || !std::isfinite(d.rate)) throw std::invalid_argument("SpinChainSpec: rates must be finite and non-negative");
    }
}

LindbladSystem xyz_chain(const SpinChainSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    const Eigen::Index d = Eigen::Index{1} << n;
    auto op = [n](int site, const ComplexMatrix& m) { return site_operator(n, site, m); };

    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int i = 1; i <= n; ++i) {
        if (spec.h[static_cast<std::size_t>(i - 1)] != 0.0) h += spec.h[static_cast<std::size_t>(i - 1)] * op(i, pauli::z());
    }
    const std::size_t nb = spec.bond_count();
    for (std::size_t b = 0; b < nb; ++b) {
        const int i = static_cast<int>(b) + 1;
        const int k = i == n ? 1 : i + 1;
        const std::pair<double, ComplexMatrix> terms[] = {
            {spec.jx[b], pauli::x()}, {spec.jy[b], pauli::y()}, {spec.jz[b], pauli::z()}};
        for (const auto& [coupling, s] : terms) {
            if (coupling != 0.0) h += coupling * (op(i, s) * op(k, s));
        }
    }

    std::vector<ComplexMatrix> ls;
    for (const auto& diss : spec.dissipators) {
        const ComplexMatrix& m = diss.kind == DissipatorKind::Gain   ? pauli::plus()
                                 : diss.kind == DissipatorKind::Loss ? pauli::minus()
                                                                     : pauli::z();
        ls.push_back(std::sqrt(diss.rate) * op(diss.site, m));
    }
    return LindbladSystem(std::move(h), std::move(ls));
}

SpinChainSpec uniform_chain(int n, double h, double jx, double jy, double jz, double gp, double gm, int loss_site) {
    SpinChainSpec s;
    s.n_sites = n;
    s.h.assign(static_cast<std::size_t>(std::max(n, 0)), h);
    const std::size_t nb = s.bond_count();
    s.jx.assign(nb, jx);
    s.jy.assign(nb, jy);
    s.jz.assign(nb, jz);
    s.dissipators = {{1, DissipatorKind::Gain, gp}, {loss_site, DissipatorKind::Loss, gm}};
    return s;
}

LindbladSystem transverse_ising(int n, double h, double j, double gp, double gm, int loss_site) {
    return xyz_chain(uniform_chain(n, h, j, 0.0, 0.0, gp, gm, loss_site));
}

LindbladSystem xx_chain(int n, double h, double j, double gp, double gm) {
    return xyz_chain(uniform_chain(n, h, j, j, 0.0, gp, gm, n));
}

LindbladSystem xxz_chain(int n, double j, double delta, double gp, double gm) {
    return xyz_chain(uniform_chain(n, 0.0, j, j, j * delta, gp, gm, n));
}

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

using Builder = std::function<LindbladSystem(const PresetParams&)>;

const std::map<std::string, Builder>& registry() {
    static const std::map<std::string, Builder> presets = {
        {"lind1101", [](const PresetParams&) { return two_level(0.0, {mat2(1, 1, 0, 1)}); }},
        {"lind0101-lind0102",
         [](const PresetParams&) { return two_level(0.0, {mat2(0, 1, 0, 1), mat2(0, 1, 0, 2)}); }},
        {"lind1101hsy",
         [](const PresetParams&) { return LindbladSystem(0.5 * pauli::y(), {mat2(1, 1, 0, 1)}); }},
        {"lind1101-lind1m101",
         [](const PresetParams&) { return two_level(0.0, {mat2(1, 1, 0, 1), mat2(1, -1, 0, 1)}); }},
        {"lindsphsx", [](const PresetParams& p) { return two_level(p.h.value_or(1.0), {pauli::plus()}); }},
        {"loss-gain",
         [](const PresetParams& p) {
             return two_level(0.0, {std::sqrt(p.gp.value_or(1.0)) * pauli::plus(),
                                    std::sqrt(p.gm.value_or(1.0)) * pauli::minus()});
         }},
        {"sp-driven", [](const PresetParams& p) { return two_level(0.0, {std::sqrt(p.gp.value_or(1.0)) * pauli::plus()}); }},
        {"dephase", [](const PresetParams&) { return two_level(0.0, {pauli::z()}); }},
        {"ferromagnet2", [](const PresetParams&) { return two_site_ferromagnet(); }},
        {"ising-boundary",
         [](const PresetParams& p) {
             return transverse_ising(p.n.value_or(3), p.h.value_or(1.0), p.j.value_or(1.0), p.gp.value_or(1.0),
                                     p.gm.value_or(1.0), 1);
         }},
        {"ising-max",
         [](const PresetParams& p) {
             const int n = p.n.value_or(3);
             return transverse_ising(n, p.h.value_or(1.0), p.j.value_or(1.0), p.gp.value_or(1.0), p.gm.value_or(1.0), n);
         }},
        {"xx-max",
         [](const PresetParams& p) {
             return xx_chain(p.n.value_or(3), p.h.value_or(0.5), p.j.value_or(1.0), p.gp.value_or(1.0), p.gm.value_or(1.0));
         }},
        {"xxz-max",
         [](const PresetParams& p) {
             return xxz_chain(p.n.value_or(3), p.j.value_or(1.0), p.delta.value_or(0.5), p.gp.value_or(1.0),
                              p.gm.value_or(1.0));
         }},
    };
    return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : registry()) out.push_back(name);
    return out;
}

std::string normalize_preset_name(const std::string& name) {
    std::string s = name;
    for (char& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == '_') c = '-';
    }
    return s;
}

LindbladSystem make_preset(const std::string& name, const PresetParams& params) {
    const auto& reg = registry();
    const auto it = reg.find(normalize_preset_name(name));
    if (it == reg.end()) throw std::invalid_argument("unknown preset '" + name + "'");
    for (const auto* rate : {&params.gp, &params.gm}) {
        if (*rate && !(**rate >= 0.0)) throw std::invalid_argument("preset rates must be non-negative");
    }
    LindbladSystem sys = it->second(params);
    sys.validate();
    return sys;
}

}  // namespace davies
