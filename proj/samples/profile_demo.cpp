// Prints the complexity profile of a random 64-bit word next to the N/2 reference line.

#include <cstdint>
#include <iomanip>
#include <iostream>

#include "twoadic/profile.hpp"
#include "twoadic/random.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 7;
  const twoadic::BitSequence s = twoadic::random_sequence(seed, 0, 64);
  std::cout << "sequence " << s.to_string() << "\n\n n  lambda(n)  n/2\n";
  const auto p = twoadic::profile(s);
  for (const auto& e : p.entries) {
    std::cout << std::setw(2) << e.n << "  " << std::fixed << std::setprecision(3) << std::setw(9)
              << e.value.small_lambda << "  " << std::setw(4) << std::setprecision(1) << e.n / 2.0 << '\n';
  }
}
