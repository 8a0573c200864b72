// Builds the moduli point of a plane in Z^5 and compares the recovered shapes with the exact ones.
#include "latshape/moduli.hpp"

#include <iostream>

using namespace latshape;

int main() {
  QuadraticForm Q = QuadraticForm::sum_of_squares(5);
  Subspace L = Subspace::span({{1, 2, 0, 1, 0}, {0, 1, 3, 0, 1}});
  ModuliPoint mp = moduli_point(Q, L);
  ModuliCheck c = shapes_from_moduli(Q, L, mp);
  std::cout << "disc(L) = " << disc(Q, L) << ", alpha = " << mp.alpha << "\n";
  std::cout << "m_L =\n" << mp.m_L << "\n";
  std::cout << "residuals: block " << c.block_residual << ", det " << c.det_residual << ", orth " << c.orth_residual
            << ", shape L " << c.shape_L_residual << ", shape L^perp " << c.shape_Lperp_residual << "\n";
  return c.max_residual() < 1e-9 ? 0 : 1;
}
