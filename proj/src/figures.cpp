#include "cmc/figures.hpp"

#include <array>

#include "cmc/errors.hpp"

namespace cmc {

namespace {

const std::array<FigureSpec, 10>& registry() {
  static const std::array<FigureSpec, 10> figures{{
      {"m2_h0.1", FigureKind::SphericalEmbedding, 2, 0.1, 41.28796038772471},
      {"m2_h0.3", FigureKind::SphericalEmbedding, 2, 0.3, 9.129645968138256},
      {"m2_h0.57", FigureKind::SphericalEmbedding, 2, 0.57, 3.5313222039296357},
      {"m3_h0.5774", FigureKind::SphericalEmbedding, 3, 0.5774, 346879.6632142387},
      {"m3_h0.6", FigureKind::SphericalEmbedding, 3, 0.6, 365.3705636110441},
      {"m3_h0.8", FigureKind::SphericalEmbedding, 3, 0.8, 22.320379289179478},
      {"m3_h1", FigureKind::SphericalEmbedding, 3, 1.0, 9.908469426660892},
      {"m3_h1.2", FigureKind::SphericalEmbedding, 3, 1.2, 6.084010495710457},
      {"m3_h1.237", FigureKind::SphericalEmbedding, 3, 1.237, 5.6615177218839605},
      {"delaunay_h-1_c2", FigureKind::Delaunay, 0, -1.0, 2.0},
  }};
  return figures;
}

}  // namespace

std::span<const FigureSpec> figure_registry() { return registry(); }

const FigureSpec& find_figure(std::string_view id) {
  for (const auto& f : registry()) {
    if (f.id == id) return f;
  }
  throw CmcError(ErrorCode::InvalidArgument, "unknown figure id '" + std::string(id) + "'");
}

}  // namespace cmc
