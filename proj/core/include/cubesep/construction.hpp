#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubesep/development.hpp"
#include "cubesep/labeled_complex.hpp"

namespace cubesep {

// Image in z of a based-lift vertex; defined for vertices of the developed
// lift of z (throws InvariantError otherwise).
int lift_image(const LabeledComplex& z, const NormalForm& p);

// Developed lift of a breadth-first fundamental domain of z: the tree-path
// words plus one endpoint per non-tree edge, interval-closed.
DevelopedComplex develop_domain(const LabeledComplex& z);

// Closes missing squares in place: transports corners across existing
// squares and, when stuck, closes a chain into a cycle to mirror a parallel
// cycle of matching length.  Adds sigma entries only; never adds vertices.
// Returns false when neither rule applies but violations remain.
struct SaturationStats {
  int transports = 0;
  int cycle_closures = 0;
};
bool saturate_squares(LabeledComplex& z, SaturationStats* stats = nullptr,
                      int max_rounds = 1 << 20);

struct BuildStats {
  int folds = 0;
  SaturationStats saturation;
  bool chain_fallback = false;
  int chain_attempts = 0;
};

// Pipeline computing, for a compact local isometry z and a non-member g, a
// finite complex y with z as a based subcomplex, y a local isometry, every
// g-word tracing non-closed at the base, and |y0| <= |z0| (|g|+1).
//
// Stages run in order; every structural step re-verifies the facts it relies
// on and throws InvariantError / ConstructionIncomplete when they fail.
class SeparatingComplexBuilder {
 public:
  SeparatingComplexBuilder(LabeledComplex z, NormalForm g);

  LabeledComplex run();  // all stages, returns y

  void setup();                  // lift and ambient hulls
  void partition_hyperplanes();  // wall classes: orbit / wrapping flags
  void floor_and_quotient();     // floor complex and its retraction onto z
  void select_chain();           // ordered separating chain + frame charts
  void build_frame_quotients();  // per-chain piece complexes
  void glue_and_saturate();      // assemble y

  // A wrapping collateral family: walls whose frame segments push into the
  // lift and wind around a sigma-cycle of z.
  struct WrapClass {
    int label = -1;
    int cycle_length = 0;
    std::vector<int> members;  // wrapping wall indices
    NormalForm coset_base;
    std::vector<int> line;  // floor vertex ids of a segment crossing members
  };

  struct ChainEntry {
    int wall = -1;              // representative wall index
    std::vector<int> members;   // candidate walls in the collateral class
    FrameChart chart;           // star-coset product grid in the ambient hull
    int lvl0 = 0;               // absolute level nearest the lift
    int dir = 1;                // +1 if levels increase away from the lift
    int seg_len = 0;            // m_i
    bool interfered = false;    // crosses a wall meeting the orbit
    std::vector<int> slice0;    // ambient vids at relative level 0, per side
    DevelopedComplex side0;     // the same slice as a developed complex
    DevelopedComplex gate_hull;                // projection of slice0 to lift
    std::vector<int> image_verts;              // z-vertices of the projection
    std::optional<LabeledComplex> image;       // its image complex in z
    std::optional<CoverComplex> completion;
    std::vector<int> dev;       // per side index: completion vertex id
    std::vector<int> used;      // sorted unique completion ids in the image
    std::optional<LabeledComplex> piece;  // (image in completion) x segment
    int rel_level(int abs) const { return dir > 0 ? abs - lvl0 : lvl0 - abs; }
  };

  struct ChartReport {
    bool passed = true;
    std::vector<std::string> notes;
  };
  // Product-region charts for realized wrap-class index sets and the
  // intersection law between them.
  ChartReport verify_region_charts() const;

  // inputs
  LabeledComplex z;
  NormalForm g;

  // setup()
  DevelopedComplex lift;     // developed fundamental domain hull
  DevelopedComplex ambient;  // hull of lift and the g-translate of the base
  int target_vid = -1;

  // partition_hyperplanes()
  std::vector<Hyperplane> walls;
  std::vector<std::vector<int>> wall_sides;  // per wall: side of each vid
  std::vector<char> meets_lift;
  std::vector<char> meets_orbit;  // some dual edge lies in the subgroup orbit
  std::vector<int> wrap_len;    // cycle length for wrapping walls, else 0
  std::vector<int> coll_class;  // collateral class id per wall

  // floor_and_quotient()
  DevelopedComplex floor_complex;
  std::vector<int> floor_q;  // retraction: floor vid -> z vertex
  std::vector<WrapClass> wrap_classes;

  // select_chain()
  std::vector<ChainEntry> chain;
  std::vector<int> transverse;  // candidate walls crossing some chain wall

  // glue_and_saturate()
  std::optional<LabeledComplex> y;

  BuildStats stats;

 private:
  bool chain_ok(const std::vector<int>& classes_in_order,
                std::vector<int>* reps_out) const;
  int candidate_rep(const std::vector<int>& members) const;
  int walls_between_floor(int wall) const;
  bool wall_separates_wall_from_floor(int w, int x) const;
  std::vector<int> floor_vids_;       // floor vertices as ambient vids
  std::vector<int> orbit_image_;      // ambient vid -> z vertex, or -1
  std::vector<int> candidates_;       // walls missing the subgroup orbit
  std::map<int, std::vector<int>> class_members_;  // per collateral class
  int stage_ = 0;
};

// One-call front ends.
LabeledComplex theorem_a(const LabeledComplex& z, const NormalForm& g);

struct VerificationReport {
  bool subcomplex_ok = false;
  bool local_isometry_ok = false;
  bool trace_ok = false;
  bool bound_ok = false;
  std::vector<std::string> failures;
  bool passed() const {
    return subcomplex_ok && local_isometry_ok && trace_ok && bound_ok;
  }
};
// Checks the four output facts on any candidate y (z occupies vertex ids
// 0..|z|-1 with the same base, per this library's construction convention).
VerificationReport verify_theorem_a(const LabeledComplex& z,
                                    const NormalForm& g,
                                    const LabeledComplex& y);

}  // namespace cubesep
