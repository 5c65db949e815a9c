#pragma once

// Dielectric response on the imaginary frequency axis and the Fresnel
// reflection coefficients of a single planar interface with vacuum.
//
// Frequencies xi and plasma/relaxation frequencies are inverse lengths in the
// library's natural units (hbar = c = 1). Magnetic permeability is 1.

#include <string>
#include <variant>

namespace casimir::materials {

struct PerfectConductor {};
struct Vacuum {};
struct Plasma {
    double omega_p;
};
struct Drude {
    double omega_p;
    double gamma;
};
struct Constant {
    double eps;
};

class DielectricModel {
  public:
    using Variant = std::variant<PerfectConductor, Plasma, Drude, Constant, Vacuum>;

    DielectricModel() : model_(PerfectConductor{}) {}

    static DielectricModel perfect_conductor() { return DielectricModel(PerfectConductor{}); }
    static DielectricModel vacuum() { return DielectricModel(Vacuum{}); }
    /// omega_p > 0
    static DielectricModel plasma(double omega_p);
    /// omega_p > 0, gamma >= 0. gamma == 0 evaluates identically to plasma(omega_p).
    static DielectricModel drude(double omega_p, double gamma);
    /// eps >= 1
    static DielectricModel constant(double eps);

    const Variant& variant() const { return model_; }
    bool is_perfect_conductor() const { return std::holds_alternative<PerfectConductor>(model_); }
    bool is_vacuum() const { return std::holds_alternative<Vacuum>(model_); }

    /// Short tag: pec, vacuum, plasma, drude, const.
    std::string type_name() const;
    /// Human-readable, round-trippable through parse_model_spec in the CLI
    /// (e.g. "drude:1.5:0.01").
    std::string describe() const;

    friend bool operator==(const DielectricModel& a, const DielectricModel& b);

  private:
    explicit DielectricModel(Variant v) : model_(v) {}
    Variant model_;
};

/// Sign convention: an ideal mirror has r_te = -1, r_tm = +1.
struct ReflectionPair {
    double te = 0.0;
    double tm = 0.0;
};

/// epsilon(i xi) for xi > 0. The perfect conductor returns +infinity as a
/// sentinel; callers go through fresnel_imag, which handles it.
double epsilon_imag(const DielectricModel& model, double xi);

/// Reflection coefficients at imaginary frequency xi >= 0 and in-plane
/// wavenumber k_perp >= 0 (not both zero). At xi == 0 this is the n = 0
/// Matsubara limit of reflection_zero_mode.
///
/// Written without the differences (q - q~) and (eps q - q~), which lose all
/// accuracy when eps is close to 1 or when k_perp dominates:
///   r_te = -(eps - 1) xi^2 / (q + q~)^2
///   r_tm = (eps - 1) ((eps + 1) k^2 + eps xi^2) / (eps q + q~)^2
/// with q = sqrt(k^2 + xi^2) and q~ = sqrt(k^2 + eps xi^2).
ReflectionPair fresnel_imag(const DielectricModel& model, double xi, double k_perp);

/// xi -> 0 limit at fixed k_perp > 0. Drude: (0, 1). Plasma: TE from
/// q~ -> sqrt(k^2 + omega_p^2), TM = 1. Perfect conductor: (-1, 1).
/// Constant: (0, (eps - 1)/(eps + 1)). Vacuum: (0, 0).
ReflectionPair reflection_zero_mode(const DielectricModel& model, double k_perp);

}  // namespace casimir::materials
