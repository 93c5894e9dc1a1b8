#pragma once

// Windowed moments of S and S1 and their ladder-transformed versions.

#include <iosfwd>
#include <string>
#include <vector>

#include "zeta_ladder/argument.hpp"
#include "zeta_ladder/ladder.hpp"

namespace zeta_ladder::moments {

enum class MomentKind { s_moment, s1_moment, transformed_s, transformed_s1 };

/// Weight carried by a transformed moment.
enum class Weight { z_tilde_sq, zeta_sq };

struct MomentEstimate {
    MomentKind kind = MomentKind::s_moment;
    Weight weight = Weight::z_tilde_sq;  // transformed kinds only
    double T = 0.0;
    double U = 0.0;
    int k = 1;
    double raw_integral = 0.0;
    double normalizer = 0.0;
    double ratio = 0.0;
};

/// (2k)! / (k! (2 pi)^(2k)).
double gaussian_moment_coefficient(int k);

/// int_T^{T+U} S^{2k}; normalizer coefficient(k) U (ln ln T)^k.
MomentEstimate s_moment(double T, double U, int k, const argument::ArgumentFunction& arg);

/// int_T^{T+U} S1^{2k}; normalizer U, so the ratio estimates c_k.
MomentEstimate s1_moment(double T, double U, int k, const argument::ArgumentFunction& arg);

/// Plain moment over an arbitrary interval [a, b] (no normalizer).
double plain_integral(double a, double b, int k, bool use_s1, const argument::ArgumentFunction& arg);

/// int_T^{T+U} S*(phi_1(t))^{2k} w(t) dt with S* = S or S1 and w = Z~^2 or |zeta|^2.
/// Normalizers:
///   transformed_s,  z_tilde_sq: coefficient(k) U (ln ln T)^k
///   transformed_s,  zeta_sq:    coefficient(k) U ln T (ln ln T)^k
///   transformed_s1, z_tilde_sq: U
///   transformed_s1, zeta_sq:    U ln T
MomentEstimate transformed_moment(const ladder::LadderTable& table, double T, double U, int k,
                                  const argument::ArgumentFunction& arg, MomentKind kind,
                                  Weight weight);

/// Same-window c_k: the |zeta|^2-weighted transformed S1 moment over U ln T.
double empirical_c_k(const ladder::LadderTable& table, double T, double U, int k,
                     const argument::ArgumentFunction& arg);

std::string kind_name(MomentKind kind, Weight weight);

/// `kind,T,U,k,raw,normalizer,ratio`, 12 significant digits.
void export_moments(const std::vector<MomentEstimate>& rows, std::ostream& out);

}  // namespace zeta_ladder::moments
