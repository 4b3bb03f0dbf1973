#pragma once

#include <string>
#include <vector>

namespace dihedral {

// Sign switches. Defaults are the correct conventions; each flag turned off
// drops exactly one sign factor, which the validators must then detect.
struct SignConventions {
  bool alternate_dq = true;  // (-1)^{i1+...+ik} in d_q^k
  bool wrap_sign = true;     // (-1)^{q(k-1)} on wrap-around faces
  bool s_epsilon = true;     // (-1)^eps in s^{k-1}
  bool r_prefactor = true;   // (-1)^{n(n+1)/2} in R_n
  bool t_prefactor = true;   // (-1)^n in T_n

  static std::vector<std::pair<std::string, SignConventions>> single_mutations() {
    std::vector<std::pair<std::string, SignConventions>> out;
    SignConventions c;
    c.alternate_dq = false;
    out.emplace_back("dq alternation", c);
    c = {};
    c.wrap_sign = false;
    out.emplace_back("wrap face sign", c);
    c = {};
    c.s_epsilon = false;
    out.emplace_back("s epsilon", c);
    c = {};
    c.r_prefactor = false;
    out.emplace_back("R prefactor", c);
    c = {};
    c.t_prefactor = false;
    out.emplace_back("T prefactor", c);
    return out;
  }
};

inline int sign_of(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace dihedral
