#pragma once

// Rank-3 pictures in the affine cut {x : sum of coordinates = 1}: the
// normalized small roots and the traces of their orthogonal hyperplanes.

#include <string>
#include <vector>

#include "coxaut/small_roots.hpp"

namespace coxaut {

struct TraceSegment {
  int node = 0;  // the small root whose hyperplane this is
  RootVector from;
  RootVector to;
};

struct ProjectivePicture {
  std::vector<RootVector> points;  // normalized, one per node of the table
  std::vector<TraceSegment> segments;
};

ProjectivePicture projective_picture(const SmallRootTable& table);

struct RenderOptions {
  bool labels = true;
};

/// SVG 1.1 document, 800x693, coordinates with six decimals.
std::string render_rank3_svg(const SmallRootTable& table, const RenderOptions& opts = {});

}  // namespace coxaut
