#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "quadsemi/diophantine.hpp"
#include "quadsemi/error.hpp"

namespace quadsemi::diophantine {

namespace detail {
extern const std::string_view kEmbeddedRegistry;
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw RegistryError(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

  Family family(std::size_t line, const std::string& v) const {
    if (v == "A") return Family::A;
    if (v == "B") return Family::B;
    if (v == "C") return Family::C;
    fail(line, "unknown family '" + v + "'");
  }

  Selector selector(std::size_t line, const std::string& v) const {
    static const std::map<std::string, Selector> names{
        {"+q^2", Selector::PlusSq},           {"-q^2", Selector::MinusSq},
        {"+(q^2-1)", Selector::PlusSqMinus1}, {"-(q^2-1)", Selector::MinusSqMinus1},
        {"+(q^2+1)", Selector::PlusSqPlus1},  {"-(q^2+1)", Selector::MinusSqPlus1},
    };
    std::string compact;
    for (char ch : v) {
      if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
    }
    auto it = names.find(compact);
    if (it == names.end()) fail(line, "unknown selector '" + v + "'");
    return it->second;
  }

  // Grammar: ["+-"] ( "(" poly ")" | poly ), poly a signed sum of terms c, c u, u^2, ...
  Component component(std::size_t line, const std::string& text) const {
    Component c;
    std::string body;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
    }
    if (body.starts_with("+-")) {
      c.plus_minus = true;
      body.erase(0, 2);
    }
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    if (body.empty()) fail(line, "empty component");
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::int64_t sign = 1;
      if (body[pos] == '+' || body[pos] == '-') {
        sign = body[pos] == '-' ? -1 : 1;
        ++pos;
      } else if (pos != 0) {
        fail(line, "malformed component '" + text + "'");
      }
      std::int64_t coeff = 1;
      bool has_digits = false;
      if (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) {
        auto [ptr, ec] = std::from_chars(body.data() + pos, body.data() + body.size(), coeff);
        if (ec != std::errc()) fail(line, "bad integer in '" + text + "'");
        pos = static_cast<std::size_t>(ptr - body.data());
        has_digits = true;
      }
      int degree = 0;
      if (pos < body.size() && body[pos] == 'u') {
        ++pos;
        degree = 1;
        if (pos < body.size() && body[pos] == '^') {
          ++pos;
          if (pos >= body.size() || !std::isdigit(static_cast<unsigned char>(body[pos]))) fail(line, "bad exponent");
          degree = body[pos] - '0';
          ++pos;
        }
      } else if (!has_digits) {
        fail(line, "malformed component '" + text + "'");
      }
      if (degree > 2) fail(line, "component degree exceeds 2 in '" + text + "'");
      c.coeffs[static_cast<std::size_t>(degree)] += sign * coeff;
    }
    return c;
  }

  std::vector<Technique> techniques(std::size_t line, const std::string& v) const {
    std::vector<Technique> out;
    if (v.empty()) return out;
    for (const auto& item : split(v, ',')) {
      if (item == "mod4") out.push_back({TechniqueKind::Mod4, {}});
      else if (item == "mod8") out.push_back({TechniqueKind::Mod8, {}});
      else if (item == "sandwich") out.push_back({TechniqueKind::Sandwich, {}});
      else if (item == "curve") out.push_back({TechniqueKind::Curve, {}});
      else if (item == "factor") out.push_back({TechniqueKind::Factor, {}});
      else if (item.starts_with("symmetry(") && item.ends_with(")"))
        out.push_back({TechniqueKind::Symmetry, item.substr(9, item.size() - 10)});
      else fail(line, "unknown technique '" + item + "'");
    }
    return out;
  }

 private:
  std::string origin_;
};

int family_number(Family f) { return static_cast<int>(f) + 1; }

bool satisfies(const System& sys, const Solution& p) {
  const std::array<std::int64_t, 4> point = p;
  return sys.left_poly().evaluate(std::span<const std::int64_t>(point)) == 0 &&
         sys.right_poly().evaluate(std::span<const std::int64_t>(point)) == 0;
}

std::pair<int, int> id_key(const std::string& id) {
  const auto dot = id.find('.');
  return {std::stoi(id.substr(4, dot - 4)), std::stoi(id.substr(dot + 1))};
}

}  // namespace

std::vector<LemmaEntry> parse_registry(std::string_view text, const std::string& origin) {
  Parser p(origin);
  struct Pending {
    LemmaEntry entry;
    std::size_t line = 0;
    bool has_family = false, has_left = false, has_right = false, has_claim = false, has_techniques = false;
    bool claims_none = false;
  };
  std::vector<Pending> records;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') p.fail(line_no, "unterminated section header");
      Pending rec;
      rec.entry.id = line.substr(1, line.size() - 2);
      rec.line = line_no;
      records.push_back(std::move(rec));
      continue;
    }
    if (records.empty()) p.fail(line_no, "key outside of a record");
    const auto eq = line.find('=');
    if (eq == std::string::npos) p.fail(line_no, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    auto& rec = records.back();
    if (key == "family") {
      rec.entry.system.family = p.family(line_no, value);
      rec.has_family = true;
    } else if (key == "left") {
      rec.entry.system.left = p.selector(line_no, value);
      rec.has_left = true;
    } else if (key == "right") {
      rec.entry.system.right = p.selector(line_no, value);
      rec.has_right = true;
    } else if (key == "claim") {
      if (value == "none") {
        if (rec.has_claim) p.fail(line_no, "'none' mixed with other claims");
        rec.claims_none = true;
      } else {
        if (rec.claims_none) p.fail(line_no, "'none' mixed with other claims");
        const auto parts = split(value, ',');
        if (parts.size() != 4) p.fail(line_no, "a claim needs four components x, y, s, t");
        SolutionFamily fam;
        for (std::size_t k = 0; k < 4; ++k) fam.components[k] = p.component(line_no, parts[k]);
        rec.entry.claimed.push_back(fam);
      }
      rec.has_claim = true;
    } else if (key == "techniques") {
      rec.entry.techniques = p.techniques(line_no, value);
      rec.has_techniques = true;
    } else {
      p.fail(line_no, "unknown key '" + key + "'");
    }
  }

  std::vector<LemmaEntry> out;
  std::map<std::string, std::size_t> seen;
  for (auto& rec : records) {
    auto& e = rec.entry;
    if (!rec.has_family || !rec.has_left || !rec.has_right || !rec.has_claim || !rec.has_techniques) {
      p.fail(rec.line, "record " + e.id + " lacks one of family, left, right, claim, techniques");
    }
    const auto& ls = left_selectors(e.system.family);
    const auto& rs = right_selectors(e.system.family);
    const auto i = std::find(ls.begin(), ls.end(), e.system.left) - ls.begin();
    const auto j = std::find(rs.begin(), rs.end(), e.system.right) - rs.begin();
    if (i == 4 || j == 4) p.fail(rec.line, "selector not legal for family " + to_string(e.system.family));
    const std::string expected_id =
        "case" + std::to_string(family_number(e.system.family)) + "." + std::to_string(4 * i + j + 1);
    if (e.id != expected_id) p.fail(rec.line, "record " + e.id + " should be named " + expected_id);
    if (seen.contains(e.id)) p.fail(rec.line, "duplicate record " + e.id);
    seen[e.id] = out.size();
    for (const auto& fam : e.claimed) {
      const bool parametric = fam.kind() == FamilyKind::Parametric;
      for (std::int64_t u = parametric ? -10 : 0; u <= (parametric ? 10 : 0); ++u) {
        Solution pt{};
        for (std::size_t k = 0; k < 4; ++k) pt[k] = fam.components[k].at(u);
        if (!satisfies(e.system, pt)) {
          p.fail(rec.line, "claim " + fam.to_string() + " of " + e.id + " fails its system at u = " + std::to_string(u));
        }
      }
    }
    out.push_back(std::move(e));
  }

  std::sort(out.begin(), out.end(), [](const LemmaEntry& a, const LemmaEntry& b) { return id_key(a.id) < id_key(b.id); });
  for (Family f : {Family::A, Family::B, Family::C}) {
    const auto n = std::count_if(out.begin(), out.end(), [f](const LemmaEntry& e) { return e.system.family == f; });
    if (n != 16) {
      throw RegistryError(origin + ": family " + to_string(f) + " has " + std::to_string(n) + " records, expected 16");
    }
  }
  for (const auto& e : out) {
    auto target_id = e.symmetry_target();
    if (!target_id) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const LemmaEntry& o) { return o.id == *target_id; });
    if (it == out.end()) throw RegistryError(origin + ": " + e.id + " names unknown symmetry target " + *target_id);
    if (id_key(it->id) >= id_key(e.id)) throw RegistryError(origin + ": symmetry target of " + e.id + " must precede it");
    const auto& t = it->system;
    if (t.family != e.system.family || t.left != e.system.right || t.right != e.system.left) {
      throw RegistryError(origin + ": " + e.id + " is not the (x,y,s,t) -> (y,x,t,s) image of " + *target_id);
    }
  }
  return out;
}

std::string_view embedded_registry_text() { return detail::kEmbeddedRegistry; }

const std::vector<LemmaEntry>& registry() {
  static const std::vector<LemmaEntry> entries = [] {
    if (const char* path = std::getenv("QUADSEMI_REGISTRY"); path != nullptr && *path != '\0') {
      std::ifstream in(path);
      if (!in) throw RegistryError(std::string("cannot open registry file ") + path);
      std::ostringstream buf;
      buf << in.rdbuf();
      return parse_registry(buf.str(), path);
    }
    return parse_registry(embedded_registry_text(), "<embedded registry>");
  }();
  return entries;
}

const LemmaEntry& find_entry(const std::string& id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e;
  }
  throw ContractError("unknown lemma id '" + id + "' (expected case1.1 ... case3.16)");
}

}  // namespace quadsemi::diophantine
