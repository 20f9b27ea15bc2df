#include "qiso/gauss.hpp"

#include <stdexcept>

namespace qiso {

GaussRational GaussRational::inv() const {
  if (is_zero()) throw std::domain_error("GaussRational: division by zero");
  Rat n = norm2();
  return GaussRational(re / n, -im / n);
}

namespace {

std::string rat_str(const Rat& r) { return r.str(); }

// Parses a rational "a" or "a/b" (optional leading sign).
Rat parse_rat(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) throw std::invalid_argument("GaussRational: empty rational");
  try {
    return Rat(std::string(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("GaussRational: bad rational '" + std::string(s) + "'");
  }
}

}  // namespace

std::string GaussRational::str() const {
  if (im == 0) return rat_str(re);
  std::string imabs = rat_str(im < 0 ? Rat(-im) : im);
  std::string itail = (imabs == "1") ? "i" : imabs + "i";
  if (re == 0) return (im < 0 ? "-" : "") + itail;
  return rat_str(re) + (im < 0 ? "-" : "+") + itail;
}

GaussRational GaussRational::parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("GaussRational: empty input");
  if (s.back() != 'i') return GaussRational(parse_rat(s));
  std::string_view body = s.substr(0, s.size() - 1);
  // Find a '+' or '-' separating the real part from the imaginary part.
  // Skip position 0 (sign of the real or imaginary part itself).
  size_t split = std::string_view::npos;
  for (size_t p = 1; p < body.size(); ++p) {
    if (body[p] == '+' || body[p] == '-') split = p;  // rationals contain no signs mid-token
  }
  auto parse_im = [](std::string_view t) -> Rat {
    if (t.empty()) return Rat(1);
    if (t == "-") return Rat(-1);
    if (t == "+") return Rat(1);
    return parse_rat(t);
  };
  if (split == std::string_view::npos) {
    return GaussRational(Rat(0), parse_im(body));
  }
  Rat re = parse_rat(body.substr(0, split));
  std::string_view imtok = body.substr(split);  // includes the sign
  Rat im = (imtok.size() == 1) ? (imtok[0] == '-' ? Rat(-1) : Rat(1)) : parse_rat(imtok);
  return GaussRational(re, im);
}

}  // namespace qiso
