#pragma once

// Complex-time picture of the first-order integral -int h e^{Phi} dt with
// Phi = i W_{+-}: degeneracy points, landscape sampling, boundary diagnosis.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nhadiab/model.hpp"

namespace nhadiab {

/// Axis-aligned rectangle in the complex time plane with a node lattice.
struct ComplexRect {
  double re_min = 0.0, re_max = 0.0;
  double im_min = 0.0, im_max = 0.0;
  std::size_t n_re = 41, n_im = 41;

  cplx node(std::size_t i_re, std::size_t i_im) const;
  bool contains(cplx t, double slack = 0.0) const;
};

struct Degeneracy {
  cplx t{};
  double residual = 0.0;  // |z(t)| / (|Gamma + 2i Delta|^2 + 4 |Omega|^2)
  double gap = 0.0;       // |E_+ - E_-| at t
  int iterations = 0;
  bool converged = false;
};

struct DegeneracySearch {
  ComplexRect band;
  int max_iterations = 50;
  double tolerance = 1e-15;  // relative Newton step
};

/// Default band: Re t in [0, t_f], |Im t| <= t_f / 2, 161 x 161 scan.
DegeneracySearch default_search(const ProtocolSchedule& schedule);

/// Grid scan of log|z| minima followed by Newton refinement. Candidates that
/// fail to converge to a relative residual of 1e-10 are kept with
/// converged = false.
std::vector<Degeneracy> find_degeneracies(const ProtocolSchedule& schedule,
                                          const ModelParams& params,
                                          const DegeneracySearch& search);

/// Closed-form roots t_f/2 + i (Gamma -+ 2 Omega_0) / (2b) of an LZ radicand.
std::vector<cplx> lz_degeneracies(const LandauZenerParams& lz, double gamma);

struct LandscapeNode {
  cplx t{};
  cplx phi{};
  cplx h{};  // <+^|d/dt -> = -alpha_dot / 2 continued to complex time
  bool valid = true;
  Flag flags = Flag::None;
};

struct LandscapeConfig {
  std::size_t contour_steps = 2000;
  /// Contours passing closer than margin * t_f to a degeneracy are invalid.
  double margin = 0.01;
  std::optional<BranchDefaults> branches;
};

struct ComplexLandscape {
  std::shared_ptr<const ProtocolSchedule> schedule;
  ModelParams params;
  BranchDefaults branches;
  ComplexRect rect;
  std::vector<LandscapeNode> nodes;  // row-major, imaginary index outer
  std::vector<Degeneracy> degeneracies;
  LandscapeConfig config;

  const LandscapeNode& at(std::size_t i_re, std::size_t i_im) const {
    return nodes[i_im * rect.n_re + i_re];
  }
};

/// Phi at the end of a polyline starting at t = 0, tracked along the path.
/// Sets Flag::CoarseStep in `flags` when the branch tracker loses continuity.
cplx phi_along(const ProtocolSchedule& schedule, const ModelParams& params,
               const std::vector<cplx>& path, std::size_t steps_per_segment,
               const BranchDefaults& branches, Flag* flags = nullptr);

inline cplx phi_straight(const ProtocolSchedule& schedule, const ModelParams& params, cplx t,
                         std::size_t steps, const BranchDefaults& branches) {
  return phi_along(schedule, params, {cplx(0.0), t}, steps, branches);
}

ComplexLandscape sample_landscape(const ProtocolSchedule& schedule, const ModelParams& params,
                                  const ComplexRect& rect, const LandscapeConfig& config = {});

/// Re t in [0, t_f], |Im t| <= 0.06 t_f.
ComplexRect default_landscape_rect(const ProtocolSchedule& schedule);

enum class BoundaryVerdict { BoundaryDominated, InteriorContaminated };

const char* to_string(BoundaryVerdict v);

struct ClassifierConfig {
  double height_margin = 0.2;       // fraction of t_f
  double h_ratio = 10.0;            // |h| near t_c vs |h(t_f)|
  double off_axis_degrees = 45.0;   // descent counts as off-axis above this angle
  double screening = 2.302585092994046;  // ln 10 drop of Re Phi towards t_c
  double approach = 0.999;          // vertical contour stops at this fraction of Im t_c
  std::size_t axis_samples = 4000;
  std::size_t contour_steps = 4000;
};

struct DegeneracyAssessment {
  cplx t{};
  bool close = false;         // Re t in (0, t_f) and |Im t| <= height margin
  bool descent_side = false;  // same half plane as the descent direction
  double screening = 0.0;     // Re Phi(Re t_c) - Re Phi(t_c approach point)
  double h_peak = 0.0;        // max |h| on the real axis near Re t_c
  bool disturbance = false;   // h_peak > h_ratio |h(t_f)|
  bool contaminates = false;
};

struct BoundaryReport {
  BoundaryVerdict verdict = BoundaryVerdict::BoundaryDominated;
  cplx descent{};              // steepest descent direction of Re Phi at t_f
  double descent_degrees = 0;  // angle from the real axis
  bool off_axis = false;
  double h_boundary = 0.0;     // |h(t_f)|
  std::vector<DegeneracyAssessment> degeneracies;
  std::string reason;
};

BoundaryReport classify_boundary_validity(const ComplexLandscape& landscape,
                                          const ClassifierConfig& config = {});

}  // namespace nhadiab
