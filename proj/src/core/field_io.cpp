#include "core/field_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace minkflow {

void write_field(std::ostream& os, const Field& u, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  os << "minkflow-field v1 n_r=" << u.n_r() << " n_theta=" << u.n_theta() << " t=" << buf
     << '\n';
  for (std::size_t j = 0; j < u.n_r(); ++j) {
    for (std::size_t k = 0; k < u.n_theta(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", u(j, k));
      if (k) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

namespace {

// strtod accepts subnormals that std::stod rejects with out_of_range.
bool parse_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

}  // namespace

FieldSnapshot read_field(std::istream& is) {
  auto fail = [](std::size_t line, const std::string& what) {
    throw Error(ErrorCode::Parse, "field snapshot line " + std::to_string(line) + ": " + what);
  };
  std::string header;
  if (!std::getline(is, header)) fail(1, "missing header");
  std::size_t n_r = 0, n_theta = 0;
  double t = 0.0;
  {
    std::istringstream hs(header);
    std::string magic, version, nr_tok, nt_tok, t_tok;
    hs >> magic >> version >> nr_tok >> nt_tok >> t_tok;
    if (magic != "minkflow-field" || version != "v1") fail(1, "bad magic or version");
    try {
      if (nr_tok.rfind("n_r=", 0) != 0 || nt_tok.rfind("n_theta=", 0) != 0 ||
          t_tok.rfind("t=", 0) != 0) {
        fail(1, "malformed header fields");
      }
      n_r = std::stoul(nr_tok.substr(4));
      n_theta = std::stoul(nt_tok.substr(8));
      if (!parse_double(t_tok.substr(2), t)) fail(1, "bad time");
    } catch (const std::logic_error&) {
      fail(1, "malformed header values");
    }
  }
  FieldSnapshot snap{Field(n_r, n_theta), t};
  std::string line;
  for (std::size_t j = 0; j < n_r; ++j) {
    if (!std::getline(is, line)) fail(j + 2, "missing row");
    std::istringstream ls(line);
    for (std::size_t k = 0; k < n_theta; ++k) {
      std::string tok;
      if (!(ls >> tok)) fail(j + 2, "too few values");
      if (!parse_double(tok, snap.u(j, k))) fail(j + 2, "bad number '" + tok + "'");
    }
    std::string extra;
    if (ls >> extra) fail(j + 2, "too many values");
  }
  return snap;
}

}  // namespace minkflow
