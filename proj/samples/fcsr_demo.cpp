// Runs a small FCSR and shows that the minimal denominator of its output divides the
// connection integer.

#include <iostream>

#include "twoadic/fcsr.hpp"
#include "twoadic/rational_rep.hpp"

int main() {
  const twoadic::FcsrSpec spec{{1, 0, 1}, {1, 1, 0}, 1};
  const auto out = twoadic::fcsr_generate(spec, 32);
  const auto rep = twoadic::min_rational_rep(out.bits);
  const auto q_conn = spec.connection_integer();
  std::cout << "bits           " << out.bits.to_string() << '\n'
            << "connection q   " << q_conn << '\n'
            << "minimal (f, q) (" << rep.f << ", " << rep.q << ")\n"
            << "q divides q_conn: " << (q_conn % rep.q == 0 ? "yes" : "no") << '\n';
}
