#include "ugkit/document.hpp"

#include <cctype>
#include <map>
#include <set>

namespace ugkit {

namespace {

bool ident_start(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return ident_start(c) || c == '\'' || c == '.' || c == '/';
}

struct Token {
  enum Kind { Ident, Punct, End } kind = End;
  std::string text;
  int line = 0;
  int column = 0;
};

[[noreturn]] void syntax(int line, int column, const std::string& msg) {
  throw ValidationError({Issue{ErrorCode::Syntax, msg, line, column}});
}

std::vector<Token> tokenize_line(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Token::Punct, "->", line, col});
      i += 2;
      continue;
    }
    if (std::string_view(":{}[]()\\+").find(c) != std::string_view::npos) {
      out.push_back({Token::Punct, std::string(1, c), line, col});
      ++i;
      continue;
    }
    syntax(line, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::End, "", line, static_cast<int>(s.size()) + 1});
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::End; }

  bool accept(const std::string& punct) {
    if (peek().kind == Token::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const std::string& punct) {
    if (!accept(punct)) fail("expected '" + punct + "'");
  }

  void expect_keyword(const std::string& kw) {
    if (peek().kind != Token::Ident || peek().text != kw) fail("expected '" + kw + "'");
    ++pos_;
  }

  RawName ident(const char* what) {
    if (peek().kind != Token::Ident) fail(std::string("expected ") + what);
    const Token& t = toks_[pos_++];
    return {t.text, t.line, t.column};
  }

  std::vector<RawName> idents() {
    std::vector<RawName> out;
    while (peek().kind == Token::Ident) out.push_back(ident("identifier"));
    return out;
  }

  void finish() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    syntax(t.line, t.column, t.kind == Token::End ? msg + " at end of line" : msg);
  }

  RawSet set() {
    RawSet out;
    out.line = peek().line;
    out.column = peek().column;
    do {
      RawSet::Term term;
      if (accept("{")) {
        term.ids = idents();
        expect("}");
      } else if (peek().kind == Token::Ident && peek().text == "ray") {
        ++pos_;
        expect("(");
        term.ray = true;
        term.ray_name = ident("ray name");
        expect(")");
        if (accept("\\")) {
          expect("{");
          term.ids = idents();
          expect("}");
        }
      } else {
        fail("expected a set");
      }
      out.terms.push_back(std::move(term));
    } while (accept("+"));
    return out;
  }

  std::vector<RawSet> set_list() {
    expect("[");
    std::vector<RawSet> out;
    while (!accept("]")) {
      if (at_end()) fail("expected ']'");
      out.push_back(set());
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class F>
void for_each_line(std::string_view text, F&& f) {
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    auto toks = tokenize_line(text.substr(start, end - start), line);
    if (toks.size() > 1) f(LineParser(std::move(toks)), line);
    start = end + 1;
  }
}

std::string set_text(const Ultragraph& g, const VertexSet& s) {
  return format_set(g.universe(), s);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RawUltragraph parse_raw(std::string_view text) {
  RawUltragraph raw;
  bool named = false;
  for_each_line(text, [&](LineParser p, int) {
    const Token head = p.peek();
    if (head.kind != Token::Ident) p.fail("expected a declaration");
    RawName kw = p.ident("declaration");
    if (!named && kw.text != "ultragraph") {
      syntax(head.line, head.column, "document must start with 'ultragraph NAME'");
    }
    if (kw.text == "ultragraph") {
      if (named) syntax(head.line, head.column, "second 'ultragraph' header");
      raw.name = p.ident("ultragraph name");
      named = true;
    } else if (kw.text == "vertices") {
      p.expect(":");
      for (auto& v : p.idents()) raw.vertices.push_back(std::move(v));
    } else if (kw.text == "ray") {
      p.expect(":");
      raw.rays.push_back(p.ident("ray name"));
    } else if (kw.text == "edge") {
      RawUltragraph::Edge e;
      e.name = p.ident("edge name");
      p.expect(":");
      e.source = p.ident("source vertex");
      p.expect("->");
      e.range = p.set();
      raw.edges.push_back(std::move(e));
    } else if (kw.text == "family") {
      RawUltragraph::Fam f;
      f.line = head.line;
      f.column = head.column;
      f.name = p.ident("family name");
      p.expect_keyword("at");
      f.source = p.ident("source vertex");
      p.expect(":");
      p.expect_keyword("prefix");
      f.prefix = p.set_list();
      p.expect_keyword("cycle");
      f.cycle = p.set_list();
      raw.families.push_back(std::move(f));
    } else {
      syntax(head.line, head.column, "unknown declaration '" + kw.text + "'");
    }
    p.finish();
  });
  if (!named) syntax(1, 1, "document must start with 'ultragraph NAME'");
  return raw;
}

Ultragraph parse_document(std::string_view text) { return validate(parse_raw(text)); }

VertexSet parse_set(const Universe& u, std::string_view text) {
  if (text.find('\n') != std::string_view::npos) syntax(1, 1, "a set fits on one line");
  LineParser p(tokenize_line(text, 1));
  RawSet raw = p.set();
  p.finish();
  std::vector<Issue> issues;
  VertexSet s = resolve_set(u, raw, "set", issues);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return s;
}

std::string print_document(const Ultragraph& g) {
  if (!g.tails().empty()) {
    throw Error(ErrorCode::Unsupported,
                "ultragraphs with tails have no document form; truncate first");
  }
  const Universe& u = g.universe();
  std::string out = "ultragraph " + g.name() + "\nvertices:";
  for (const auto& v : u.core_names()) out += " " + v;
  out += "\n";
  for (const auto& r : u.ray_names()) out += "ray: " + r + "\n";
  for (const auto& e : g.named_edges()) {
    out += "edge " + e.name + ": " + g.vertex_name(e.source) + " -> " +
           set_text(g, e.range) + "\n";
  }
  for (const auto& f : g.families()) {
    out += "family " + f.name + " at " + g.vertex_name(f.source) + ": prefix [";
    for (const auto& s : f.ranges.prefix) out += " " + set_text(g, s);
    out += " ] cycle [";
    for (const auto& s : f.ranges.cycle) out += " " + set_text(g, s);
    out += " ]\n";
  }
  return out;
}

Matrix01 parse_matrix(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<std::string> labels;
  std::vector<std::uint8_t> entries;
  int last_line = 0;
  for_each_line(text, [&](LineParser p, int line) {
    last_line = line;
    if (!n) {
      const Token t = p.peek();
      RawName v = p.ident("matrix size");
      std::size_t size = 0;
      for (char c : v.text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          syntax(t.line, t.column, "expected matrix size");
        }
        size = size * 10 + static_cast<std::size_t>(c - '0');
        if (size > 100000) syntax(t.line, t.column, "matrix size too large");
      }
      p.finish();
      n = size;
      return;
    }
    if (labels.empty() && entries.empty() && p.peek().text == "labels") {
      p.ident("labels");
      p.expect(":");
      for (auto& l : p.idents()) labels.push_back(l.text);
      if (labels.size() != *n) {
        syntax(line, 1, "expected " + std::to_string(*n) + " labels");
      }
      p.finish();
      return;
    }
    if (entries.size() == *n * *n) syntax(line, 1, "more than n rows");
    std::size_t count = 0;
    while (!p.at_end()) {
      const Token t = p.peek();
      RawName v = p.ident("0 or 1");
      if (v.text != "0" && v.text != "1") syntax(t.line, t.column, "expected 0 or 1");
      entries.push_back(v.text == "1" ? 1 : 0);
      ++count;
    }
    if (count != *n) {
      syntax(line, 1, "row has " + std::to_string(count) + " entries, expected " +
                          std::to_string(*n));
    }
  });
  if (!n) syntax(1, 1, "expected matrix size");
  if (entries.size() != *n * *n) {
    syntax(last_line + 1, 1, "expected " + std::to_string(*n) + " rows");
  }
  if (labels.empty()) labels = Matrix01(*n).labels();
  return Matrix01(std::move(labels), std::move(entries));
}

std::string print_matrix(const Matrix01& a) {
  std::string out = std::to_string(a.size()) + "\nlabels:";
  for (const auto& l : a.labels()) out += " " + l;
  out += "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) out += ' ';
      out += a.at(i, j) ? '1' : '0';
    }
    out += "\n";
  }
  return out;
}

DirectedGraph parse_graph(std::string_view text) {
  DirectedGraph h;
  h.name = "graph";
  std::map<std::string, std::size_t> index;
  std::set<std::string> edge_names;
  std::vector<Issue> issues;
  for_each_line(text, [&](LineParser p, int) {
    const Token head = p.peek();
    RawName kw = p.ident("declaration");
    if (kw.text == "graph") {
      h.name = p.ident("graph name").text;
    } else if (kw.text == "vertices") {
      p.expect(":");
      for (const auto& v : p.idents()) {
        if (!index.emplace(v.text, h.vertices.size()).second) {
          issues.push_back({ErrorCode::DuplicateId, "duplicate vertex '" + v.text + "'",
                            v.line, v.column});
          continue;
        }
        h.vertices.push_back(v.text);
      }
    } else if (kw.text == "edge") {
      RawName name = p.ident("edge name");
      p.expect(":");
      RawName a = p.ident("source vertex");
      p.expect("->");
      RawName b = p.ident("target vertex");
      if (!edge_names.insert(name.text).second) {
        issues.push_back({ErrorCode::DuplicateId, "duplicate edge '" + name.text + "'",
                          name.line, name.column});
      }
      auto ia = index.find(a.text);
      auto ib = index.find(b.text);
      for (const auto* v : {&a, &b}) {
        if (!index.count(v->text)) {
          issues.push_back({ErrorCode::UnknownVertex,
                            "'" + name.text + "' refers to unknown vertex '" + v->text + "'",
                            v->line, v->column});
        }
      }
      if (ia != index.end() && ib != index.end()) {
        h.edges.push_back({name.text, ia->second, ib->second});
      }
    } else {
      syntax(head.line, head.column, "unknown declaration '" + kw.text + "'");
    }
    p.finish();
  });
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return h;
}

std::string print_graph(const DirectedGraph& h) {
  std::string out = "graph " + h.name + "\nvertices:";
  for (const auto& v : h.vertices) out += " " + v;
  out += "\n";
  for (const auto& e : h.edges) {
    out += "edge " + e.name + ": " + h.vertices[e.source] + " -> " +
           h.vertices[e.target] + "\n";
  }
  return out;
}

std::string to_dot(const Ultragraph& g) {
  const Universe& u = g.universe();
  std::string out = "digraph " + quote(g.name()) + " {\n";
  for (const auto& v : u.core_names()) out += "  " + quote(v) + ";\n";
  std::set<VertexId> ray_nodes;
  std::set<std::string> ray_heads;
  std::string arrows;
  for (auto e : g.edges_up_to(g.presentation_span())) {
    const std::string label = " [label=" + quote(g.edge_name(e)) + "];\n";
    const std::string src = quote(g.vertex_name(g.source(e)));
    if (!g.source(e).in_core()) ray_nodes.insert(g.source(e));
    const VertexSet r = g.range(e);
    for (auto c : r.core()) {
      arrows += "  " + src + " -> " + quote(u.core_names()[c]) + label;
    }
    for (std::uint32_t ray = 0; ray < r.rays().size(); ++ray) {
      const RayPart& part = r.rays()[ray];
      if (!part.cofinite) {
        for (auto i : part.indices) {
          VertexId v = VertexId::on_ray(ray, i);
          ray_nodes.insert(v);
          arrows += "  " + src + " -> " + quote(u.name(v)) + label;
        }
        continue;
      }
      VertexSet only = VertexSet::whole_ray(u, ray).intersect(r);
      const std::string head = format_set(u, only);
      ray_heads.insert(head);
      arrows += "  " + src + " -> " + quote(head) + " [label=" +
                quote(g.edge_name(e)) + ", style=bold];\n";
    }
  }
  for (auto v : ray_nodes) out += "  " + quote(u.name(v)) + ";\n";
  for (const auto& h : ray_heads) out += "  " + quote(h) + " [shape=box];\n";
  out += arrows;
  if (!g.families().empty()) {
    out += "  // families continue periodically past the drawn indices\n";
  }
  return out + "}\n";
}

}  // namespace ugkit
