#include "starclean/parse.hpp"

#include <cctype>
#include <json.hpp>

#include "starclean/errors.hpp"

namespace starclean {

namespace {

std::uint64_t parse_uint(std::string_view s, std::size_t pos) {
  if (s.empty()) throw ParseError("expected a number", pos);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("expected a digit", pos + i);
    if (v > (UINT64_MAX - 9) / 10) throw ParseError("number too large", pos);
    v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
  }
  return v;
}

Presentation presentation_of(std::uint64_t i, std::size_t pos) {
  if (i < 1 || i > 5) throw ParseError("presentation must be D1..D5", pos);
  return static_cast<Presentation>(i);
}

void fold_atom(GroupSpec& out, std::string_view atom, std::size_t pos) {
  if (atom.empty()) throw ParseError("empty group factor", pos);
  if (atom == "Q8") {
    if (out.slc) throw ParseError("at most one non-abelian factor", pos);
    out.slc = SLCParams{Presentation::D2, 1, 0, 0, {}};
    return;
  }
  if (atom.front() == 'C') {
    const std::uint64_t n = parse_uint(atom.substr(1), pos + 1);
    if (n < 1) throw ParseError("cyclic order must be >= 1", pos + 1);
    out.abelian.push_back(n);
    return;
  }
  if (atom.front() == 'D') {
    if (out.slc) throw ParseError("at most one non-abelian factor", pos);
    const std::size_t br = atom.find('[');
    SLCParams p;
    p.type = presentation_of(parse_uint(atom.substr(1, br == std::string_view::npos ? atom.size() - 1 : br - 1), pos + 1),
                             pos + 1);
    p.k = 1;
    if (br != std::string_view::npos) {
      if (atom.back() != ']') throw ParseError("expected ']'", pos + atom.size());
      std::string_view body = atom.substr(br + 1, atom.size() - br - 2);
      std::size_t start = 0;
      while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string_view::npos) comma = body.size();
        const std::string_view kv = body.substr(start, comma - start);
        const std::size_t eq = kv.find('=');
        const std::size_t kpos = pos + br + 1 + start;
        if (eq == std::string_view::npos) throw ParseError("expected key=value", kpos);
        const std::string_view key = kv.substr(0, eq);
        const std::uint64_t v = parse_uint(kv.substr(eq + 1), kpos + eq + 1);
        if (key == "k") {
          p.k = static_cast<unsigned>(v);
        } else if (key == "k2") {
          p.k2 = static_cast<unsigned>(v);
        } else if (key == "k3") {
          p.k3 = static_cast<unsigned>(v);
        } else {
          throw ParseError("unknown parameter '" + std::string(key) + "'", kpos);
        }
        start = comma + 1;
      }
    }
    if ((p.type == Presentation::D3 || p.type == Presentation::D4 || p.type == Presentation::D5) && p.k2 == 0) p.k2 = 1;
    if (p.type == Presentation::D5 && p.k3 == 0) p.k3 = 1;
    out.slc = p;
    return;
  }
  throw ParseError("unknown group factor '" + std::string(atom) + "'", pos);
}

GroupSpec parse_config(std::string_view text) {
  // Quote bare keys so the object parses as JSON.
  std::string js;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) && (js.empty() || js.back() == '{' || js.back() == ',' ||
                                                         std::isspace(static_cast<unsigned char>(js.back())))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::size_t k = j;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k < text.size() && text[k] == ':') {
        js += '"';
        js.append(text.substr(i, j - i));
        js += '"';
        i = j - 1;
        continue;
      }
    }
    js += c;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(js);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid group config: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  GroupSpec out;
  try {
    if (j.contains("abelian")) out.abelian = j.at("abelian").get<std::vector<std::uint64_t>>();
    if (j.contains("type")) {
      std::string t = j.at("type").get<std::string>();
      if (t == "Q8") t = "D2";
      if (t.size() != 2 || t[0] != 'D') throw ParseError("type must be D1..D5 or Q8", 0);
      SLCParams p;
      p.type = presentation_of(static_cast<std::uint64_t>(t[1] - '0'), 0);
      p.k = j.value("k", 1U);
      p.k2 = j.value("k2", 0U);
      p.k3 = j.value("k3", 0U);
      if ((p.type == Presentation::D3 || p.type == Presentation::D4 || p.type == Presentation::D5) && p.k2 == 0) p.k2 = 1;
      if (p.type == Presentation::D5 && p.k3 == 0) p.k3 = 1;
      out.slc = p;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid group config: ") + e.what(), 0);
  }
  return out;
}

std::string render(const GroupSpec& s) {
  std::string out;
  if (s.slc) {
    const auto& p = *s.slc;
    if (p.type == Presentation::D2 && p.k == 1) {
      out = "Q8";
    } else {
      out = to_string(p.type) + "[k=" + std::to_string(p.k);
      if (p.k2) out += ",k2=" + std::to_string(p.k2);
      if (p.k3) out += ",k3=" + std::to_string(p.k3);
      out += "]";
    }
  }
  for (auto n : s.abelian) out += (out.empty() ? "C" : "xC") + std::to_string(n);
  return out.empty() ? "C1" : out;
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string_view t = text.substr(b, e - b);
  if (t.empty()) throw ParseError("empty group spec", 0);
  GroupSpec out;
  if (t.front() == '{') {
    out = parse_config(t);
  } else {
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.size(); ++i) {
      const char c = i < t.size() ? t[i] : 'x';
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == 'x' && depth == 0) {
        std::string atom;
        for (char ch : t.substr(start, i - start)) {
          if (!std::isspace(static_cast<unsigned char>(ch))) atom += ch;
        }
        fold_atom(out, atom, b + start);
        start = i + 1;
      }
    }
    if (depth != 0) throw ParseError("unbalanced brackets", b + t.size());
  }
  if (out.slc) out.slc->abelian = out.abelian;
  out.canonical_text = render(out);
  return out;
}

GroupInput build_group(const GroupSpec& spec, std::size_t max_order) {
  GroupInput in;
  in.text = spec.canonical_text;
  if (spec.slc) {
    in.slc = build_slc(*spec.slc, max_order);
    in.group = in.slc->group;
  } else {
    in.group = build_abelian(spec.abelian, max_order);
  }
  return in;
}

}  // namespace starclean
