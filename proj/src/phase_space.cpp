#include "diejen/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace diejen {

std::optional<Violation> validate(const PhasePoint& p, double gap) {
    const int n = p.n();
    if (n < 1 || p.eta.size() != n) return Violation{-1, -1, 0.0, "xi and eta must have equal positive length"};
    if (!p.xi.allFinite() || !p.eta.allFinite()) return Violation{-1, -1, 0.0, "non-finite coordinate"};
    for (int a = 0; a + 1 < n; ++a) {
        const double d = p.xi(a) - p.xi(a + 1);
        if (!(d > gap)) {
            std::ostringstream os;
            os << "ordering violated at pair (" << a + 1 << "," << a + 2 << "): xi difference " << d;
            return Violation{a, a + 1, d, os.str()};
        }
    }
    if (!(p.xi(n - 1) > gap)) {
        std::ostringstream os;
        os << "positivity violated at " << n << ": xi = " << p.xi(n - 1) << " not above " << gap;
        return Violation{n - 1, -1, p.xi(n - 1), os.str()};
    }
    return std::nullopt;
}

void require_valid(const PhasePoint& p, double gap) {
    if (auto v = validate(p, gap)) throw Error(ErrorKind::invalid_input, "invalid phase point: " + v->message);
}

CouplingClass classify(const Coupling& g, double reg) {
    if (!(std::abs(std::sin(g.mu)) > reg && std::abs(std::sin(g.nu)) > reg)) return CouplingClass::outside;
    if (!(std::abs(std::sin(2.0 * g.mu - g.nu)) > reg)) return CouplingClass::M;
    if (!(std::abs(std::cos(g.mu - g.nu)) > reg)) return CouplingClass::M_tilde;
    return CouplingClass::M_tilde_0;
}

bool in_M(const Coupling& g, double reg) { return classify(g, reg) != CouplingClass::outside; }

bool in_M_tilde(const Coupling& g, double reg) {
    const auto c = classify(g, reg);
    return c == CouplingClass::M_tilde || c == CouplingClass::M_tilde_0;
}

const char* class_name(CouplingClass c) {
    switch (c) {
        case CouplingClass::outside: return "outside";
        case CouplingClass::M: return "M";
        case CouplingClass::M_tilde: return "M_tilde";
        case CouplingClass::M_tilde_0: return "M_tilde_0";
    }
    return "?";
}

void require_M(const Coupling& g, double reg) {
    if (!in_M(g, reg)) throw Error(ErrorKind::coupling, "coupling outside 𝔐");
}

void require_M_tilde(const Coupling& g, double reg) {
    require_M(g, reg);
    if (!in_M_tilde(g, reg)) throw Error(ErrorKind::coupling, "coupling outside 𝔐̃");
}

Coupling hat_coupling(const Coupling& g) { return {-g.mu, -g.nu}; }

std::optional<std::string> validate(const AsymptoticPoint& z, double gap) {
    const int n = z.n();
    if (n < 1 || z.eta.size() != n) return "xi and eta must have equal positive length";
    if (z.sign != 1 && z.sign != -1) return "sign must be +1 or -1";
    if (!z.xi.allFinite() || !z.eta.allFinite()) return "non-finite coordinate";
    // sign * eta must be descending positive
    for (int a = 0; a < n; ++a) {
        const double cur = z.sign * z.eta(a);
        const double next = a + 1 < n ? z.sign * z.eta(a + 1) : 0.0;
        if (!(cur - next > gap)) {
            std::ostringstream os;
            os << "rapidity ordering violated at " << a + 1 << " for sign " << (z.sign > 0 ? "+" : "-");
            return os.str();
        }
    }
    return std::nullopt;
}

PhasePoint sample(int n, std::uint64_t seed, const SampleBounds& b) {
    if (n < 1) throw Error(ErrorKind::invalid_input, "sample: n must be positive");
    const double span = b.xi_hi - b.xi_lo - (n - 1) * b.xi_gap;
    if (!(b.xi_lo > 0.0) || !(span >= 0.0) || !(b.xi_gap > 0.0) || !(b.eta_hi >= b.eta_lo))
        throw Error(ErrorKind::invalid_input, "sample: infeasible bounds");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::vector<double> s(static_cast<size_t>(n));
    for (auto& v : s) v = b.xi_lo + span * ux(rng);
    std::sort(s.begin(), s.end(), std::greater<>());
    PhasePoint p{RVector(n), RVector(n)};
    for (int a = 0; a < n; ++a) p.xi(a) = s[static_cast<size_t>(a)] + (n - 1 - a) * b.xi_gap;
    for (int a = 0; a < n; ++a) p.eta(a) = b.eta_lo + (b.eta_hi - b.eta_lo) * ux(rng);
    return p;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace diejen
