#pragma once

// Isoperimetric profiles of the catalog spaces: closed forms for the
// Euclidean kinds, quadrature + monotone inversion for the sphere and the
// one-dimensional log-concave measures.

#include <string>
#include <vector>

#include "isoperim/space.hpp"

namespace isoperim {

enum class ProfileKind { euclidean, half_plane, sphere, log_concave };

class Profile {
public:
    static Profile euclidean(int n);
    static Profile half_plane();
    static Profile sphere(int n);
    static Profile log_concave(double p);

    // profile with I replaced by factor * I (transference experiments)
    Profile scaled(double factor) const;

    ProfileKind kind() const { return kind_; }
    int dim() const { return n_; }
    double exponent() const { return p_; }
    double scale_factor() const { return scale_; }
    bool finite_measure() const { return finite_; }
    double domain_end() const { return domain_end_; }
    std::string id() const;

    // I(t); throws std::domain_error (out_of_domain) outside (0, domain_end)
    double value(double t) const;

    // Phi(t) = min{t, mu/2} / I(min{t, mu/2}); t clamped to >= 1e-14 * scale
    double phi(double t) const;

    // true if I(t) = c t^alpha; reports c and alpha
    bool power_law(double* c, double* alpha) const;

    // int_a^b ds / I(s) for the Hardy operator; closed form for power laws
    double integral_inv(double a, double b) const;

private:
    ProfileKind kind_ = ProfileKind::euclidean;
    int n_ = 2;
    double p_ = 2.0;
    double scale_ = 1.0;
    bool finite_ = false;
    double domain_end_ = 0.0;

    double raw_value(double t) const;  // unscaled I
};

struct ProfileSpec {
    ProfileKind kind = ProfileKind::euclidean;
    int n = 2;
    double p = 2.0;
};

Profile make_profile(const ProfileSpec& spec);

// matching profile for a built space
Profile profile_for(const SampleSpace& space);

struct ProfileFidelityRow {
    double set_param = 0.0;   // radius / cap radius / cut position
    double measure = 0.0;     // mu(A)
    double content = 0.0;     // discrete Minkowski content
    double profile_value = 0.0;
    double ratio = 0.0;       // content / I(mu(A))
    bool extremal_family = false;
};

struct ProfileFidelityReport {
    std::vector<ProfileFidelityRow> rows;
    bool lower_bound_ok = true;  // content >= I(mu) * (1 - tol) on every row
    bool extremal_ok = true;     // extremal rows also satisfy content <= I(mu) * (1 + tol)
    double tolerance = 0.05;
};

// Checks the discrete space against I on the kind's extremal family
// (balls / caps / half-lines) plus a few non-extremal probes.
ProfileFidelityReport validate_profile_against_space(const Profile& profile,
                                                     const SampleSpace& space,
                                                     double tolerance = 0.05);

}  // namespace isoperim
