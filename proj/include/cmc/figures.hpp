#pragma once

#include <span>
#include <string>
#include <string_view>

namespace cmc {

enum class FigureKind { SphericalEmbedding, Delaunay };

/// Published parameter sets, kept as golden references.
struct FigureSpec {
  std::string id;
  FigureKind kind = FigureKind::SphericalEmbedding;
  int m = 0;         // symmetry order (spherical examples)
  double H = 0.0;
  double C = 0.0;    // published energy constant
};

std::span<const FigureSpec> figure_registry();

/// Throws InvalidArgument for an unknown id.
const FigureSpec& find_figure(std::string_view id);

}  // namespace cmc
