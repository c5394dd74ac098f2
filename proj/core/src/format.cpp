#include "forge/format.hpp"

namespace forge {

std::string join_terms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  std::string out;
  for (const auto& [c, mono] : terms) {
    std::string body;
    bool neg = false;
    bool single = c.is_polynomial() && c.num().terms().size() == 1;
    if (single) {
      std::string cs = c.to_string();
      if (cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
      }
      if (mono.empty()) {
        body = cs;
      } else if (cs == "1") {
        body = mono;
      } else {
        body = cs + "*" + mono;
      }
    } else {
      body = "(" + c.to_string() + ")";
      if (!mono.empty()) body += "*" + mono;
    }
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace forge
