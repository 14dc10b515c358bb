#include "tautkit/triangulation.hpp"

#include <cctype>
#include <sstream>

namespace tautkit {

int Gluing::target_face() const {
  int mask = (1 << image[0]) | (1 << image[1]) | (1 << image[2]);
  return face_of_vertex_set(mask);
}

Gluing Gluing::inverse(int source_tet, int source_face) const {
  Gluing inv;
  inv.tet = source_tet;
  const auto& src = kFaceVertices[static_cast<std::size_t>(source_face)];
  const auto& dst = kFaceVertices[static_cast<std::size_t>(target_face())];
  // dst[i] is the i-th ascending vertex of the target face; find its
  // preimage among src.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (image[j] == dst[static_cast<std::size_t>(i)]) {
        inv.image[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(src[static_cast<std::size_t>(j)]);
      }
    }
  }
  return inv;
}

Triangulation::Triangulation(int tet_count) {
  if (tet_count < 0) throw UsageError("negative tetrahedron count");
  gluings_.resize(static_cast<std::size_t>(tet_count));
}

int Triangulation::add_tetrahedra(int count) {
  if (count < 0) throw UsageError("negative tetrahedron count");
  int first = tet_count();
  gluings_.resize(gluings_.size() + static_cast<std::size_t>(count));
  return first;
}

void Triangulation::check_face(int tet, int face, const char* what) const {
  if (tet < 0 || tet >= tet_count())
    throw UsageError(std::string(what) + ": tetrahedron index " +
                     std::to_string(tet) + " out of range");
  if (face < 0 || face >= kFacesPerTet)
    throw UsageError(std::string(what) + ": face index " +
                     std::to_string(face) + " out of range");
}

const std::optional<Gluing>& Triangulation::gluing(int tet, int face) const {
  check_face(tet, face, "gluing");
  return gluings_[static_cast<std::size_t>(tet)]
                 [static_cast<std::size_t>(face)];
}

bool Triangulation::is_boundary_face(int tet, int face) const {
  return !gluing(tet, face).has_value();
}

void Triangulation::set_gluing(int tet, int face, int target,
                               std::array<std::uint8_t, 3> image) {
  check_face(tet, face, "set_gluing");
  check_face(target, 0, "set_gluing target");
  for (int i = 0; i < 3; ++i) {
    if (image[static_cast<std::size_t>(i)] > 3)
      throw UsageError("set_gluing: vertex image out of range");
    for (int j = i + 1; j < 3; ++j) {
      if (image[static_cast<std::size_t>(i)] ==
          image[static_cast<std::size_t>(j)])
        throw UsageError("set_gluing: vertex images not distinct");
    }
  }
  Gluing fwd{target, image};
  int target_face = fwd.target_face();
  if (target == tet && target_face == face)
    throw ValidityError("face glued to itself (tet " + std::to_string(tet) +
                        ", face " + std::to_string(face) + ")");
  auto& here = gluings_[static_cast<std::size_t>(tet)]
                       [static_cast<std::size_t>(face)];
  auto& there = gluings_[static_cast<std::size_t>(target)]
                        [static_cast<std::size_t>(target_face)];
  if (here || there)
    throw ValidityError("face already glued (tet " + std::to_string(tet) +
                        " face " + std::to_string(face) + " -> tet " +
                        std::to_string(target) + ")");
  here = fwd;
  there = fwd.inverse(tet, face);
}

std::vector<std::pair<int, int>> Triangulation::boundary_faces() const {
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t < tet_count(); ++t)
    for (int f = 0; f < kFacesPerTet; ++f)
      if (!gluings_[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)])
        out.emplace_back(t, f);
  return out;
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

// Splits into whitespace-separated tokens, one vector per line, with
// comments stripped.
std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> current;
  int line = 1, column = 1;
  std::string word;
  int word_col = 0;
  bool in_comment = false;
  auto flush_word = [&] {
    if (!word.empty()) {
      current.push_back({word, line, word_col});
      word.clear();
    }
  };
  auto flush_line = [&] {
    flush_word();
    if (!current.empty()) lines.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush_line();
      ++line;
      column = 1;
      in_comment = false;
      continue;
    }
    if (c == '#') in_comment = true;
    if (!in_comment) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        flush_word();
      } else {
        if (word.empty()) word_col = column;
        word.push_back(c);
      }
    }
    ++column;
  }
  flush_line();
  return lines;
}

int parse_int(const Token& tok, const char* what) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(tok.text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.text.size())
    throw ParseError(std::string("expected ") + what + ", got '" + tok.text +
                         "'",
                     tok.line, tok.column);
  return static_cast<int>(value);
}

}  // namespace

Triangulation parse_triangulation(const std::string& text) {
  auto lines = tokenize(text);
  std::size_t li = 0;
  auto need_line = [&](const char* what) -> const std::vector<Token>& {
    if (li >= lines.size())
      throw ParseError(std::string("unexpected end of file, expected ") + what,
                       lines.empty() ? 1 : lines.back().front().line + 1, 1);
    return lines[li];
  };

  const auto& header = need_line("'tri 1' header");
  if (header.size() != 2 || header[0].text != "tri" || header[1].text != "1")
    throw ParseError("expected 'tri 1' header", header[0].line,
                     header[0].column);
  ++li;

  const auto& tets_line = need_line("'tets <n>' line");
  if (tets_line.size() != 2 || tets_line[0].text != "tets")
    throw ParseError("expected 'tets <n>' line", tets_line[0].line,
                     tets_line[0].column);
  int n = parse_int(tets_line[1], "tetrahedron count");
  if (n < 0)
    throw ParseError("negative tetrahedron count", tets_line[1].line,
                     tets_line[1].column);
  ++li;

  // Collect the raw per-face entries first; the mutual-inverse check runs on
  // the complete table.
  struct RawGluing {
    int target;
    std::array<std::uint8_t, 3> image;
    Token tok;
  };
  std::vector<std::array<std::optional<RawGluing>, 4>> raw(
      static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);

  for (; li < lines.size(); ++li) {
    const auto& lt = lines[li];
    if (lt[0].text != "tet")
      throw ParseError("expected 'tet <i>:' line", lt[0].line, lt[0].column);
    if (lt.size() != 6)
      throw ParseError("expected 'tet <i>: <g> <g> <g> <g>'", lt[0].line,
                       lt[0].column);
    std::string index_text = lt[1].text;
    if (index_text.empty() || index_text.back() != ':')
      throw ParseError("expected '<i>:' after 'tet'", lt[1].line,
                       lt[1].column);
    Token index_tok = lt[1];
    index_tok.text = index_text.substr(0, index_text.size() - 1);
    int i = parse_int(index_tok, "tetrahedron index");
    if (i < 0 || i >= n)
      throw ParseError("tetrahedron index out of range", lt[1].line,
                       lt[1].column);
    if (seen[static_cast<std::size_t>(i)])
      throw ParseError("duplicate 'tet' line for index " + std::to_string(i),
                       lt[0].line, lt[0].column);
    seen[static_cast<std::size_t>(i)] = true;
    for (int f = 0; f < 4; ++f) {
      const Token& g = lt[static_cast<std::size_t>(2 + f)];
      if (g.text == "bdry") continue;
      auto colon = g.text.find(':');
      if (colon == std::string::npos)
        throw ParseError("expected 'bdry' or '<j>:<abc>', got '" + g.text +
                             "'",
                         g.line, g.column);
      Token jtok = g;
      jtok.text = g.text.substr(0, colon);
      int j = parse_int(jtok, "target tetrahedron index");
      if (j < 0 || j >= n)
        throw ParseError("target tetrahedron index out of range", g.line,
                         g.column);
      std::string abc = g.text.substr(colon + 1);
      if (abc.size() != 3)
        throw ParseError("expected three digit vertex images", g.line,
                         g.column);
      std::array<std::uint8_t, 3> image{};
      for (int k = 0; k < 3; ++k) {
        char c = abc[static_cast<std::size_t>(k)];
        if (c < '0' || c > '3')
          throw ParseError("vertex image digit out of range 0..3", g.line,
                           g.column);
        image[static_cast<std::size_t>(k)] =
            static_cast<std::uint8_t>(c - '0');
      }
      if (image[0] == image[1] || image[0] == image[2] || image[1] == image[2])
        throw ParseError("vertex images not distinct", g.line, g.column);
      raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)] =
          RawGluing{j, image, g};
    }
  }
  for (int i = 0; i < n; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      throw ParseError("missing 'tet' line for index " + std::to_string(i),
                       lines.empty() ? 1 : lines.back().front().line, 1);

  // Cross-check both sides of every gluing, then build.
  Triangulation tri(n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& entry =
          raw[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)];
      if (!entry) continue;
      Gluing fwd{entry->target, entry->image};
      int tf = fwd.target_face();
      if (entry->target == t && tf == f)
        throw ParseError("face glued to itself", entry->tok.line,
                         entry->tok.column);
      const auto& back = raw[static_cast<std::size_t>(entry->target)]
                            [static_cast<std::size_t>(tf)];
      Gluing inv = fwd.inverse(t, f);
      if (!back || back->target != t ||
          Gluing{back->target, back->image} != inv)
        throw ParseError(
            "gluing-not-mutually-inverse: tet " + std::to_string(t) +
                " face " + std::to_string(f) + " -> tet " +
                std::to_string(entry->target),
            entry->tok.line, entry->tok.column);
      if (std::make_pair(t, f) < std::make_pair(entry->target, tf))
        tri.set_gluing(t, f, entry->target, entry->image);
    }
  }
  return tri;
}

std::string serialize_triangulation(const Triangulation& tri) {
  std::ostringstream out;
  out << "tri 1\n";
  out << "tets " << tri.tet_count() << "\n";
  for (int t = 0; t < tri.tet_count(); ++t) {
    out << "tet " << t << ":";
    for (int f = 0; f < kFacesPerTet; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) {
        out << " bdry";
      } else {
        out << ' ' << g->tet << ':' << int(g->image[0]) << int(g->image[1])
            << int(g->image[2]);
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tautkit
