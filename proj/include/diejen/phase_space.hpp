#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "diejen/numerics.hpp"

namespace diejen {

inline constexpr double default_gap = 1e-8;   // minimal separation of ordered positions
inline constexpr double default_reg = 1e-6;   // margin on the coupling constraints
inline constexpr double overflow_cap = 300.0; // bound on |xi|, |eta| in log units

// xi are the positions lambda_a, eta the rapidities theta_a.
struct PhasePoint {
    RVector xi;
    RVector eta;
    int n() const { return static_cast<int>(xi.size()); }
};

struct Violation {
    int first = -1;   // 0-based index of the offending pair (second == -1 means positivity of xi[first])
    int second = -1;
    double margin = 0.0;  // xi[first] - xi[second], or xi[first] itself
    std::string message;
};

std::optional<Violation> validate(const PhasePoint& p, double gap = default_gap);
void require_valid(const PhasePoint& p, double gap = default_gap);

enum class CouplingClass { outside, M, M_tilde, M_tilde_0 };

struct Coupling {
    double mu = 0.0;
    double nu = 0.0;
};

CouplingClass classify(const Coupling& g, double reg = default_reg);
bool in_M(const Coupling& g, double reg = default_reg);
bool in_M_tilde(const Coupling& g, double reg = default_reg);
const char* class_name(CouplingClass c);

// Throws ErrorKind::coupling with the message "coupling outside 𝔐" (or 𝔐̃).
void require_M(const Coupling& g, double reg = default_reg);
void require_M_tilde(const Coupling& g, double reg = default_reg);

Coupling hat_coupling(const Coupling& g);

// Points with positions as free coordinates and strictly ordered rapidities:
// sign +1 means eta descending positive, sign -1 ascending negative.
struct AsymptoticPoint {
    RVector xi;
    RVector eta;
    int sign = +1;
    int n() const { return static_cast<int>(xi.size()); }
};

std::optional<std::string> validate(const AsymptoticPoint& z, double gap = default_gap);

struct SampleBounds {
    double xi_lo = 0.3;
    double xi_hi = 2.5;
    double xi_gap = 0.2;
    double eta_lo = -1.5;
    double eta_hi = 1.5;
};

PhasePoint sample(int n, std::uint64_t seed, const SampleBounds& bounds = {});

// Independent per-item seed from a run seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace diejen
