// Lists the lines of norm D in Z^3 and the shapes of their orthogonal planes.
#include "latshape/grassenum.hpp"
#include "latshape/shapes.hpp"

#include <cstdlib>
#include <iostream>

using namespace latshape;

int main(int argc, char **argv) {
  long long D = argc > 1 ? std::atoll(argv[1]) : 21;
  QuadraticForm Q = QuadraticForm::sum_of_squares(3);
  std::vector<Subspace> H = enumerate_subspaces(Q, 1, D);
  std::cout << "D = " << D << ": " << H.size() << " lines (" << to_string(nonempty_criterion(3, 1, D)) << ")\n";
  for (auto &L : H) {
    Subspace P = orth_complement(Q, L);
    UpperHalfPoint z = upper_half_point(gram(Q, P));
    std::cout << "  " << L.key() << "  perp gram " << gauss_reduce(gram(Q, P)) << "  z = " << z.x << " + " << z.y << "i\n";
  }
}
