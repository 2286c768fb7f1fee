#pragma once

#include <unordered_map>
#include <vector>

#include "cubesep/labeled_complex.hpp"
#include "cubesep/normal_form.hpp"

namespace cubesep {

// Finite convex subcomplex of the universal cover, encoded by its vertex set
// (normal forms); edges and squares are implicit in the full subcomplex.
class DevelopedComplex {
 public:
  struct Edge {
    int src;
    int gen;
    int dst;
  };

  DevelopedComplex() = default;

  // Interval closure of `points` (the convex hull).
  static DevelopedComplex hull(const DefiningGraph& g,
                               std::vector<NormalForm> points,
                               std::size_t max_vertices = 2'000'000);
  // Wraps an already interval-closed vertex set; set `validate` to re-check.
  static DevelopedComplex from_vertices(const DefiningGraph& g,
                                        std::vector<NormalForm> points,
                                        bool validate = false);

  int size() const { return static_cast<int>(verts_.size()); }
  const NormalForm& vertex(int i) const { return verts_[i]; }
  const std::vector<NormalForm>& vertices() const { return verts_; }
  int id_of(const NormalForm& p) const;  // -1 if absent
  bool contains(const NormalForm& p) const { return id_of(p) != -1; }

  const std::vector<Edge>& edges() const { return edges_; }
  int step(int vid, Letter l) const;  // -1 if the neighbour is outside

  const DefiningGraph& graph() const { return *graph_; }

  bool verify_convex() const;  // interval closure, quadratic

 private:
  const DefiningGraph* graph_ = nullptr;
  std::vector<NormalForm> verts_;  // sorted shortlex
  std::unordered_map<NormalForm, int, NormalFormHash> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> nbr_;  // [vid][letter key] -> vid or -1
  void finish();
};

DevelopedComplex develop_hull(const DefiningGraph& g,
                              std::vector<NormalForm> points);

// Equivalence class of parallel edges under square transport, within one
// developed complex.  `key` is the shortlex-least source vertex of a dual
// edge; together with the label it identifies the wall globally.
struct Hyperplane {
  int label;
  std::vector<int> dual_sources;  // vertex ids, ascending
  NormalForm key;
};

// All edge classes, sorted by (label, key).
std::vector<Hyperplane> hyperplanes_of(const DevelopedComplex& d);

// Unique nearest point of d to x (throws InvariantError on ties, which would
// contradict convexity).
NormalForm gate(const DefiningGraph& g, const NormalForm& x,
                const DevelopedComplex& d);

// Hull of the gates of src's vertices in dst.
DevelopedComplex gate_projection(const DevelopedComplex& dst,
                                 const DevelopedComplex& src);

// Do a and b lie in different components of d minus the dual edges of h?
bool separates(const DevelopedComplex& d, const Hyperplane& h,
               const NormalForm& a, const NormalForm& b);
bool separates_ids(const DevelopedComplex& d, const Hyperplane& h, int a,
                   int b);
// Sides of every vertex w.r.t. h: 0 = source side, 1 = target side.
std::vector<int> hyperplane_sides(const DevelopedComplex& d,
                                  const Hyperplane& h);

// Some implicit square has one dual edge in each class.
bool crosses(const DevelopedComplex& d, const Hyperplane& h1,
             const Hyperplane& h2);

// Least element of the coset p * <subgroup generated by mask>; this is the
// gate of the identity in that (convex) coset.
NormalForm min_coset_rep(const DefiningGraph& g, const NormalForm& p,
                         std::uint32_t mask);

// Same wall of the universal cover: equal labels and p^-1 q in the link
// subgroup of the label.
bool same_global(const DefiningGraph& g, const Hyperplane& h1,
                 const Hyperplane& h2);

// Common dual line: equal labels and p^-1 q in the star subgroup.
bool collateral(const DefiningGraph& g, const Hyperplane& h1,
                const Hyperplane& h2);

// Product coordinates of the wall's star coset inside d: every vertex of
// d in key * A_star(label) factors as (side component, line level), and the
// factorization must be a full product grid.
struct FrameChart {
  int label = -1;
  NormalForm base;                      // coset base point (the key vertex)
  std::vector<NormalForm> sides;        // side components, sorted
  int level_lo = 0, level_hi = 0;       // inclusive exponent range
  std::vector<std::vector<int>> grid;   // [side][level - level_lo] -> vid
  int levels() const { return level_hi - level_lo + 1; }
  int side_of(int s, int lvl) const { return grid[s][lvl - level_lo]; }
};
FrameChart frame_chart(const DevelopedComplex& d, const Hyperplane& h);

// Standard segment through a dual-edge vertex of h, with its length.
struct FrameData {
  Hyperplane hyperplane;
  NormalForm line_base;
  int line_label;
  int segment_length;
};
FrameData frame_in(const DevelopedComplex& d, const Hyperplane& h);

}  // namespace cubesep
