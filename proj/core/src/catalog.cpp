#include "pgrouplab/groups.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pgl::groups {

void write_catalog(std::ostream& os, const Catalog& catalog) {
  for (const auto& e : catalog) {
    const auto& G = e.group;
    if (G.name().empty() || G.name().find_first_of(" \t\n") != std::string::npos)
      throw std::invalid_argument("write_catalog: group names must be non-empty without whitespace");
    os << "group " << G.name() << " order " << G.order() << " prime " << e.p << '\n';
    for (int a = 0; a < G.order(); ++a) {
      for (int b = 0; b < G.order(); ++b) os << (b ? " " : "") << G.mul(a, b);
      os << '\n';
    }
    os << "generators";
    for (int g : G.generators()) os << ' ' << g;
    os << '\n';
  }
}

Catalog read_catalog(std::istream& is) {
  Catalog out;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("catalog line " + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  while (next_line()) {
    std::istringstream head(line);
    std::string kw_group, name, kw_order, kw_prime;
    int order = 0, p = 0;
    if (!(head >> kw_group >> name >> kw_order >> order >> kw_prime >> p) || kw_group != "group" ||
        kw_order != "order" || kw_prime != "prime")
      fail("expected 'group <name> order <n> prime <p>'");
    if (order < 1 || order > kMaxOrder) fail("order must lie in [1, 256]");
    if (!is_prime(p)) fail("prime field is not prime");
    std::vector<std::uint16_t> table;
    table.reserve(static_cast<std::size_t>(order) * order);
    for (int r = 0; r < order; ++r) {
      if (!next_line()) fail("unexpected end of table");
      std::istringstream row(line);
      int v, count = 0;
      while (row >> v) {
        if (v < 0 || v >= order) fail("table entry out of range");
        table.push_back(static_cast<std::uint16_t>(v));
        ++count;
      }
      if (!row.eof() || count != order) fail("table row must hold exactly " + std::to_string(order) + " integers");
    }
    if (!next_line()) fail("missing generators line");
    std::istringstream gl(line);
    std::string kw;
    gl >> kw;
    if (kw != "generators") fail("expected 'generators'");
    std::vector<int> gens;
    int g;
    while (gl >> g) gens.push_back(g);
    if (!gl.eof()) fail("malformed generators line");
    try {
      out.push_back({CayleyGroup(name, order, std::move(table), gens), p});
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (!is_p_group(out.back().group, p)) fail(name + " is not a p-group for the stated prime");
  }
  return out;
}

}  // namespace pgl::groups
