#include "frobex/problem_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace frobex {

std::string LoadError::render() const {
  const char* k = kind == LoadErrorKind::syntax
                      ? "syntax error"
                      : (kind == LoadErrorKind::undefined_reference ? "undefined reference"
                                                                    : "structural check failure");
  std::string s = std::string(k);
  if (line) {
    s += " at line " + std::to_string(line);
    if (column) s += ", column " + std::to_string(column);
  }
  s += ": " + message;
  return s;
}

namespace {

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string raw = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t begin = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(begin, i - begin), begin + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return lines;
}

// A parse abort carrying one LoadError.
struct Abort {
  LoadError err;
};

[[noreturn]] void fail(LoadErrorKind kind, std::size_t line, std::size_t col,
                       const std::string& msg) {
  throw Abort{LoadError{kind, line, col, msg}};
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' ||
          c == ']'))
      return false;
  return true;
}

Degree parse_degree_blob(std::string blob, std::size_t arity, std::size_t line, std::size_t col) {
  blob.erase(std::remove_if(blob.begin(), blob.end(),
                            [](unsigned char c) { return std::isspace(c); }),
             blob.end());
  if (blob.size() < 2 || blob.front() != '(' || blob.back() != ')')
    fail(LoadErrorKind::syntax, line, col, "degree must look like (w1,...,wk|even|odd)");
  std::string body = blob.substr(1, blob.size() - 2);
  std::size_t bar = body.find('|');
  if (bar == std::string::npos)
    fail(LoadErrorKind::syntax, line, col, "degree must contain '|parity'");
  std::string wpart = body.substr(0, bar);
  std::string ppart = body.substr(bar + 1);
  Parity p = Parity::even;
  if (ppart == "even") p = Parity::even;
  else if (ppart == "odd") p = Parity::odd;
  else fail(LoadErrorKind::syntax, line, col, "parity must be even or odd, got '" + ppart + "'");
  std::vector<std::int64_t> w;
  std::size_t i = 0;
  while (i <= wpart.size()) {
    std::size_t comma = wpart.find(',', i);
    std::string piece =
        wpart.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
    try {
      std::size_t used = 0;
      long long v = std::stoll(piece, &used);
      if (used != piece.size()) throw std::invalid_argument("trailing junk");
      w.push_back(v);
    } catch (...) {
      fail(LoadErrorKind::syntax, line, col, "bad weight entry '" + piece + "'");
    }
    if (comma == std::string::npos) break;
    i = comma + 1;
  }
  if (w.size() != arity)
    fail(LoadErrorKind::syntax, line, col,
         "degree has " + std::to_string(w.size()) + " weight(s); lambda_rank is " +
             std::to_string(arity));
  return Degree(std::move(w), p);
}

// linear combination over the labels of one algebra: `0`, or terms
// `c*label` / `label` joined by + or -
Vec parse_lincomb(const std::vector<Token>& toks, std::size_t from, const AlgebraSpec& alg,
                  std::size_t line) {
  Vec out(alg.dim(), Scalar(0));
  if (from >= toks.size())
    fail(LoadErrorKind::syntax, line, 0, "expected a linear combination");
  if (toks.size() == from + 1 && toks[from].text == "0") return out;
  int sign = +1;
  std::size_t i = from;
  bool expect_term = true;
  while (i < toks.size()) {
    const Token& t = toks[i];
    if (t.text == "+" || t.text == "-") {
      if (expect_term)
        fail(LoadErrorKind::syntax, line, t.col, "unexpected '" + t.text + "' in linear combination");
      sign = (t.text == "+") ? +1 : -1;
      expect_term = true;
      ++i;
      continue;
    }
    if (!expect_term)
      fail(LoadErrorKind::syntax, line, t.col, "expected '+' or '-' before '" + t.text + "'");
    Scalar c(1);
    std::string label = t.text;
    std::size_t star = t.text.find('*');
    if (star != std::string::npos) {
      if (!parse_scalar(t.text.substr(0, star), c))
        fail(LoadErrorKind::syntax, line, t.col,
             "bad coefficient '" + t.text.substr(0, star) + "'");
      label = t.text.substr(star + 1);
    }
    if (!valid_label(label))
      fail(LoadErrorKind::syntax, line, t.col, "bad basis label '" + label + "'");
    auto idx = alg.label_index(label);
    if (!idx)
      fail(LoadErrorKind::undefined_reference, line, t.col,
           "unknown basis label '" + label + "' in algebra " + alg.name);
    out[*idx] += sign * c;
    sign = +1;
    expect_term = false;
    ++i;
  }
  if (expect_term)
    fail(LoadErrorKind::syntax, line, toks.back().col, "dangling sign in linear combination");
  return out;
}

struct RawAlgebra {
  std::size_t header_line = 0;
  std::string name;
  std::vector<std::string> basis;
  std::map<std::string, Degree> degrees;
  std::vector<Token> unit_toks;
  std::size_t unit_line = 0;
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<Token>, std::size_t>> muls;
};

struct RawEmbed {
  std::size_t header_line = 0;
  std::string sub, big;
  std::map<std::string, std::pair<std::vector<Token>, std::size_t>> maps;
};

struct RawAut {
  std::size_t header_line = 0;
  std::string name, alg;
  std::map<std::string, std::pair<std::vector<Token>, std::size_t>> maps;
};

struct RawTrace {
  std::size_t header_line = 0;
  std::string name, big, sub;
  Degree degree;
  std::map<std::string, std::pair<std::vector<Token>, std::size_t>> values;
  std::string ltwist, rtwist;
};

class ProblemParser {
 public:
  explicit ProblemParser(const std::string& text) : lines_(tokenize(text)) {}

  ParsedProblem run() {
    ParsedProblem out;
    try {
      parse_all();
      build(out);
    } catch (const Abort& a) {
      out.errors.push_back(a.err);
    }
    return out;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t arity_ = 1;
  bool sparse_ = false;
  std::vector<RawAlgebra> algebras_;
  std::vector<RawEmbed> embeds_;
  std::vector<RawAut> auts_;
  std::vector<RawTrace> traces_;
  bool have_tower_ = false;
  std::size_t tower_line_ = 0;
  std::map<std::string, std::string> tower_refs_;
  std::vector<std::string> rbasis_labels_;
  std::size_t rbasis_line_ = 0;

  const Line& cur() const { return lines_[pos_]; }
  bool done() const { return pos_ >= lines_.size(); }

  void parse_all() {
    if (lines_.empty())
      fail(LoadErrorKind::syntax, 1, 1, "empty problem file (expected lambda_rank)");
    {
      const Line& l = cur();
      if (l.tokens[0].text != "lambda_rank")
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col,
             "problem file must start with 'lambda_rank <k>'");
      if (l.tokens.size() != 2)
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "lambda_rank takes one integer");
      try {
        std::size_t used = 0;
        arity_ = std::stoul(l.tokens[1].text, &used);
        if (used != l.tokens[1].text.size()) throw std::invalid_argument("trailing junk");
      } catch (...) {
        fail(LoadErrorKind::syntax, l.number, l.tokens[1].col, "bad lambda_rank value");
      }
      if (arity_ < 1 || arity_ > 16)
        fail(LoadErrorKind::syntax, l.number, l.tokens[1].col, "lambda_rank must be in 1..16");
      ++pos_;
    }
    if (!done() && cur().tokens[0].text == "sparse") {
      const Line& l = cur();
      if (l.tokens.size() != 3 || l.tokens[1].text != "=" || l.tokens[2].text != "true")
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "expected 'sparse = true'");
      sparse_ = true;
      ++pos_;
    }
    while (!done()) {
      const std::string& head = cur().tokens[0].text;
      if (head == "algebra") parse_algebra();
      else if (head == "embed") parse_embed();
      else if (head == "aut") parse_aut();
      else if (head == "trace") parse_trace();
      else if (head == "tower") parse_tower();
      else if (head == "rbasis") parse_rbasis();
      else
        fail(LoadErrorKind::syntax, cur().number, cur().tokens[0].col,
             "unexpected '" + head + "' (expected algebra, embed, aut, trace, tower or rbasis)");
    }
    if (algebras_.empty())
      fail(LoadErrorKind::syntax, lines_.back().number, 1, "no algebra blocks in file");
  }

  bool at_block_header() const {
    const std::string& t = cur().tokens[0].text;
    return t == "algebra" || t == "embed" || t == "aut" || t == "trace" || t == "tower" ||
           t == "rbasis";
  }

  void parse_algebra() {
    RawAlgebra a;
    const Line& h = cur();
    a.header_line = h.number;
    if (h.tokens.size() != 2 || !valid_label(h.tokens[1].text))
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "expected 'algebra <name>'");
    a.name = h.tokens[1].text;
    for (const auto& prev : algebras_)
      if (prev.name == a.name)
        fail(LoadErrorKind::structural, h.number, h.tokens[1].col,
             "algebra '" + a.name + "' defined twice");
    ++pos_;
    while (!done() && !at_block_header()) {
      const Line& l = cur();
      const std::string& k = l.tokens[0].text;
      if (k == "basis") {
        if (!a.basis.empty())
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "duplicate basis line");
        for (std::size_t i = 1; i < l.tokens.size(); ++i) {
          if (!valid_label(l.tokens[i].text))
            fail(LoadErrorKind::syntax, l.number, l.tokens[i].col,
                 "bad basis label '" + l.tokens[i].text + "'");
          a.basis.push_back(l.tokens[i].text);
        }
        if (a.basis.empty())
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "basis line needs labels");
      } else if (k == "deg") {
        if (l.tokens.size() < 4 || l.tokens[2].text != "=")
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "expected 'deg <b> = (w|parity)'");
        std::string blob;
        for (std::size_t i = 3; i < l.tokens.size(); ++i) blob += l.tokens[i].text;
        a.degrees.insert_or_assign(l.tokens[1].text,
                                   parse_degree_blob(blob, arity_, l.number, l.tokens[3].col));
      } else if (k == "unit") {
        if (l.tokens.size() < 3 || l.tokens[1].text != "=")
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "expected 'unit = <lin-comb>'");
        a.unit_toks.assign(l.tokens.begin() + 2, l.tokens.end());
        a.unit_line = l.number;
      } else if (k == "mul") {
        if (l.tokens.size() < 6 || l.tokens[2].text != "*" || l.tokens[4].text != "=")
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col,
               "expected 'mul <b1> * <b2> = <lin-comb>'");
        a.muls[{l.tokens[1].text, l.tokens[3].text}] = {
            std::vector<Token>(l.tokens.begin() + 5, l.tokens.end()), l.number};
      } else {
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col,
             "unexpected '" + k + "' inside algebra block");
      }
      ++pos_;
    }
    algebras_.push_back(std::move(a));
  }

  void parse_embed() {
    RawEmbed e;
    const Line& h = cur();
    e.header_line = h.number;
    if (h.tokens.size() != 4 || h.tokens[2].text != "->")
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "expected 'embed <sub> -> <big>'");
    e.sub = h.tokens[1].text;
    e.big = h.tokens[3].text;
    ++pos_;
    while (!done() && !at_block_header()) {
      const Line& l = cur();
      if (l.tokens[0].text != "map" || l.tokens.size() < 4 || l.tokens[2].text != "=")
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "expected 'map <b> = <lin-comb>'");
      e.maps[l.tokens[1].text] = {std::vector<Token>(l.tokens.begin() + 3, l.tokens.end()),
                                  l.number};
      ++pos_;
    }
    embeds_.push_back(std::move(e));
  }

  void parse_aut() {
    RawAut a;
    const Line& h = cur();
    a.header_line = h.number;
    if (h.tokens.size() != 4 || h.tokens[2].text != "on")
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "expected 'aut <name> on <alg>'");
    a.name = h.tokens[1].text;
    a.alg = h.tokens[3].text;
    ++pos_;
    while (!done() && !at_block_header()) {
      const Line& l = cur();
      if (l.tokens[0].text != "map" || l.tokens.size() < 4 || l.tokens[2].text != "=")
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "expected 'map <b> = <lin-comb>'");
      a.maps[l.tokens[1].text] = {std::vector<Token>(l.tokens.begin() + 3, l.tokens.end()),
                                  l.number};
      ++pos_;
    }
    auts_.push_back(std::move(a));
  }

  void parse_trace() {
    RawTrace t;
    const Line& h = cur();
    t.header_line = h.number;
    if (h.tokens.size() < 8 || h.tokens[2].text != ":" || h.tokens[4].text != "->" ||
        h.tokens[6].text != "deg")
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col,
           "expected 'trace <name> : <big> -> <sub> deg (w|parity)'");
    t.name = h.tokens[1].text;
    t.big = h.tokens[3].text;
    t.sub = h.tokens[5].text;
    std::string blob;
    for (std::size_t i = 7; i < h.tokens.size(); ++i) blob += h.tokens[i].text;
    t.degree = parse_degree_blob(blob, arity_, h.number, h.tokens[7].col);
    ++pos_;
    while (!done() && !at_block_header()) {
      const Line& l = cur();
      const std::string& k = l.tokens[0].text;
      if (k == "ltwist" || k == "rtwist") {
        if (l.tokens.size() != 2)
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col, "expected '" + k + " <autname>'");
        (k == "ltwist" ? t.ltwist : t.rtwist) = l.tokens[1].text;
      } else if (k.size() > 4 && k.rfind("tr(", 0) == 0 && k.back() == ')') {
        if (l.tokens.size() < 3 || l.tokens[1].text != "=")
          fail(LoadErrorKind::syntax, l.number, l.tokens[0].col,
               "expected 'tr(<b>) = <lin-comb>'");
        std::string label = k.substr(3, k.size() - 4);
        t.values[label] = {std::vector<Token>(l.tokens.begin() + 2, l.tokens.end()), l.number};
      } else {
        fail(LoadErrorKind::syntax, l.number, l.tokens[0].col,
             "unexpected '" + k + "' inside trace block");
      }
      ++pos_;
    }
    traces_.push_back(std::move(t));
  }

  void parse_tower() {
    const Line& h = cur();
    if (have_tower_)
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "duplicate tower line");
    if (h.tokens.size() != 6)
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col,
           "expected 'tower R=<n> B=<n> A=<n> trA=<n> trB=<n>'");
    for (std::size_t i = 1; i < 6; ++i) {
      const std::string& t = h.tokens[i].text;
      std::size_t eq = t.find('=');
      if (eq == std::string::npos)
        fail(LoadErrorKind::syntax, h.number, h.tokens[i].col,
             "expected key=value, got '" + t + "'");
      std::string key = t.substr(0, eq), val = t.substr(eq + 1);
      if (key != "R" && key != "B" && key != "A" && key != "trA" && key != "trB")
        fail(LoadErrorKind::syntax, h.number, h.tokens[i].col, "unknown tower key '" + key + "'");
      if (tower_refs_.count(key))
        fail(LoadErrorKind::syntax, h.number, h.tokens[i].col, "duplicate tower key '" + key + "'");
      tower_refs_[key] = val;
    }
    if (tower_refs_.size() != 5)
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "tower line needs R, B, A, trA, trB");
    have_tower_ = true;
    tower_line_ = h.number;
    ++pos_;
  }

  void parse_rbasis() {
    const Line& h = cur();
    if (!have_tower_)
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "rbasis must follow the tower line");
    if (!rbasis_labels_.empty())
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "duplicate rbasis line");
    if (h.tokens.size() < 2)
      fail(LoadErrorKind::syntax, h.number, h.tokens[0].col, "rbasis needs at least one label");
    for (std::size_t i = 1; i < h.tokens.size(); ++i) rbasis_labels_.push_back(h.tokens[i].text);
    rbasis_line_ = h.number;
    ++pos_;
  }

  // ---- assembly ------------------------------------------------------------

  AlgebraPtr build_algebra(const RawAlgebra& ra) {
    AlgebraSpec spec;
    spec.name = ra.name;
    spec.arity = arity_;
    spec.basis = ra.basis;
    if (spec.basis.empty())
      fail(LoadErrorKind::structural, ra.header_line, 1,
           "algebra '" + ra.name + "' has no basis line");
    for (const auto& b : spec.basis) {
      auto it = ra.degrees.find(b);
      if (it == ra.degrees.end())
        fail(LoadErrorKind::structural, ra.header_line, 1,
             "algebra '" + ra.name + "': missing deg line for '" + b + "'");
      spec.degrees.push_back(it->second);
    }
    for (const auto& [b, d] : ra.degrees)
      if (std::find(spec.basis.begin(), spec.basis.end(), b) == spec.basis.end())
        fail(LoadErrorKind::undefined_reference, ra.header_line, 1,
             "algebra '" + ra.name + "': deg line for unknown label '" + b + "'");
    // a shell spec with labels only lets parse_lincomb resolve references
    AlgebraSpec shell = spec;
    shell.unit.assign(spec.basis.size(), Scalar(0));
    shell.products.assign(spec.basis.size() * spec.basis.size(), {});
    if (ra.unit_toks.empty())
      fail(LoadErrorKind::structural, ra.header_line, 1,
           "algebra '" + ra.name + "' has no unit line");
    spec.unit = parse_lincomb(ra.unit_toks, 0, shell, ra.unit_line);
    const std::size_t d = spec.basis.size();
    spec.products.assign(d * d, {});
    for (const auto& [key, val] : ra.muls) {
      auto i = shell.label_index(key.first);
      auto j = shell.label_index(key.second);
      if (!i || !j)
        fail(LoadErrorKind::undefined_reference, val.second, 1,
             "mul line references unknown label '" + (i ? key.second : key.first) + "'");
      spec.products[*i * d + *j] = to_sparse(parse_lincomb(val.first, 0, shell, val.second));
    }
    if (!sparse_) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (!ra.muls.count({spec.basis[i], spec.basis[j]}))
            fail(LoadErrorKind::structural, ra.header_line, 1,
                 "algebra '" + ra.name + "': product " + spec.basis[i] + " * " + spec.basis[j] +
                     " unspecified (set 'sparse = true' to default products to 0)");
    }
    AlgebraPtr alg;
    try {
      alg = make_algebra(std::move(spec));
    } catch (const Error& e) {
      fail(LoadErrorKind::structural, ra.header_line, 1, e.what());
    }
    Report rep = check_algebra(*alg);
    for (const auto& l : rep.lines)
      if (!l.pass)
        fail(LoadErrorKind::structural, ra.header_line, 1,
             "algebra '" + ra.name + "' fails " + l.name +
                 (l.detail.empty() ? "" : " (" + l.detail + ")"));
    return alg;
  }

  void build(ParsedProblem& out) {
    std::map<std::string, AlgebraPtr> algs;
    for (const auto& ra : algebras_) {
      AlgebraPtr a = build_algebra(ra);
      algs[ra.name] = a;
      out.algebras.emplace_back(ra.name, a);
    }
    auto find_alg = [&](const std::string& name, std::size_t line) -> AlgebraPtr {
      auto it = algs.find(name);
      if (it == algs.end())
        fail(LoadErrorKind::undefined_reference, line, 1, "unknown algebra '" + name + "'");
      return it->second;
    };

    std::map<std::pair<std::string, std::string>, Embedding> embeds;
    for (const auto& re : embeds_) {
      AlgebraPtr sub = find_alg(re.sub, re.header_line);
      AlgebraPtr big = find_alg(re.big, re.header_line);
      Matrix m(big->dim(), sub->dim());
      for (std::size_t j = 0; j < sub->dim(); ++j) {
        auto it = re.maps.find(sub->basis[j]);
        if (it == re.maps.end())
          fail(LoadErrorKind::structural, re.header_line, 1,
               "embed " + re.sub + " -> " + re.big + ": missing map line for '" + sub->basis[j] +
                   "'");
        Vec img = parse_lincomb(it->second.first, 0, *big, it->second.second);
        for (std::size_t i = 0; i < big->dim(); ++i) m.at(i, j) = img[i];
      }
      for (const auto& [label, v] : re.maps)
        if (!sub->label_index(label))
          fail(LoadErrorKind::undefined_reference, v.second, 1,
               "map line for unknown label '" + label + "'");
      Embedding e{sub, big, std::move(m)};
      Report rep = check_embedding(e);
      for (const auto& l : rep.lines)
        if (!l.pass)
          fail(LoadErrorKind::structural, re.header_line, 1,
               "embed " + re.sub + " -> " + re.big + " fails " + l.name +
                   (l.detail.empty() ? "" : " (" + l.detail + ")"));
      embeds.insert({{re.sub, re.big}, std::move(e)});
    }

    std::map<std::string, std::pair<std::string, Matrix>> auts;
    for (const auto& rt : auts_) {
      AlgebraPtr alg = find_alg(rt.alg, rt.header_line);
      Matrix m(alg->dim(), alg->dim());
      for (std::size_t j = 0; j < alg->dim(); ++j) {
        auto it = rt.maps.find(alg->basis[j]);
        if (it == rt.maps.end())
          fail(LoadErrorKind::structural, rt.header_line, 1,
               "aut " + rt.name + ": missing map line for '" + alg->basis[j] + "'");
        Vec img = parse_lincomb(it->second.first, 0, *alg, it->second.second);
        for (std::size_t i = 0; i < alg->dim(); ++i) m.at(i, j) = img[i];
      }
      Report rep = check_automorphism(*alg, m, "aut");
      for (const auto& l : rep.lines)
        if (!l.pass)
          fail(LoadErrorKind::structural, rt.header_line, 1,
               "aut " + rt.name + " fails " + l.name +
                   (l.detail.empty() ? "" : " (" + l.detail + ")"));
      auts.insert({rt.name, {rt.alg, std::move(m)}});
    }

    if (!have_tower_) return;  // bare algebra bundle

    AlgebraPtr R = find_alg(tower_refs_.at("R"), tower_line_);
    AlgebraPtr B = find_alg(tower_refs_.at("B"), tower_line_);
    AlgebraPtr A = find_alg(tower_refs_.at("A"), tower_line_);
    {
      Report rep = check_supercommutative(*R);
      if (!rep.all_pass())
        fail(LoadErrorKind::structural, tower_line_, 1,
             "tower base '" + R->name + "' is not supercommutative");
    }
    auto find_embed = [&](const std::string& s, const std::string& b) -> const Embedding& {
      auto it = embeds.find({s, b});
      if (it == embeds.end())
        fail(LoadErrorKind::undefined_reference, tower_line_, 1,
             "tower needs an 'embed " + s + " -> " + b + "' block");
      return it->second;
    };
    const Embedding& iRB = find_embed(tower_refs_.at("R"), tower_refs_.at("B"));
    const Embedding& iBA = find_embed(tower_refs_.at("B"), tower_refs_.at("A"));
    Tower tower = make_tower(R, B, A, iRB, iBA);

    auto build_trace = [&](const std::string& name, const AlgebraPtr& big, const AlgebraPtr& sub,
                           const Embedding& embedding) -> TraceData {
      const RawTrace* rt = nullptr;
      for (const auto& t : traces_)
        if (t.name == name) rt = &t;
      if (!rt)
        fail(LoadErrorKind::undefined_reference, tower_line_, 1, "unknown trace '" + name + "'");
      if (rt->big != big->name || rt->sub != sub->name)
        fail(LoadErrorKind::structural, rt->header_line, 1,
             "trace '" + name + "' must map " + big->name + " -> " + sub->name +
                 " to serve in the tower");
      if (!rt->ltwist.empty() || !rt->rtwist.empty())
        fail(LoadErrorKind::structural, rt->header_line, 1,
             "tower traces must be untwisted; drop ltwist/rtwist on '" + name + "'");
      Matrix m(sub->dim(), big->dim());
      for (std::size_t j = 0; j < big->dim(); ++j) {
        auto it = rt->values.find(big->basis[j]);
        if (it == rt->values.end()) {
          if (!sparse_)
            fail(LoadErrorKind::structural, rt->header_line, 1,
                 "trace '" + name + "': missing tr(" + big->basis[j] +
                     ") line (set 'sparse = true' to default to 0)");
          continue;
        }
        Vec img = parse_lincomb(it->second.first, 0, *sub, it->second.second);
        for (std::size_t i = 0; i < sub->dim(); ++i) m.at(i, j) = img[i];
      }
      for (const auto& [label, v] : rt->values)
        if (!big->label_index(label))
          fail(LoadErrorKind::undefined_reference, v.second, 1,
               "tr line for unknown label '" + label + "'");
      return untwisted_trace(sub, big, embedding, std::move(m), rt->degree);
    };

    NestedProblem p;
    p.name = "file";
    p.tower = tower;
    p.tr_A = build_trace(tower_refs_.at("trA"), A, R, tower.iota_RA);
    p.tr_B = build_trace(tower_refs_.at("trB"), B, R, tower.iota_RB);

    if (rbasis_labels_.empty()) {
      if (R->dim() == 1) {
        for (std::size_t i = 0; i < B->dim(); ++i) p.b_r_basis.push_back(basis_element(B, i));
      } else {
        fail(LoadErrorKind::structural, tower_line_, 1,
             "an rbasis line declaring the R-basis of " + B->name +
                 " is required when the base has rank > 1");
      }
    } else {
      for (const auto& label : rbasis_labels_) {
        auto idx = B->label_index(label);
        if (!idx)
          fail(LoadErrorKind::undefined_reference, rbasis_line_, 1,
               "rbasis label '" + label + "' is not a basis element of " + B->name);
        p.b_r_basis.push_back(basis_element(B, *idx));
      }
    }
    out.nested = std::move(p);
  }
};

}  // namespace

ParsedProblem parse_problem(const std::string& text) { return ProblemParser(text).run(); }

namespace {

void serialize_algebra(std::ostringstream& os, const AlgebraSpec& a) {
  os << "algebra " << a.name << "\n";
  os << "basis";
  for (const auto& b : a.basis) os << " " << b;
  os << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    os << "deg " << a.basis[i] << " = " << to_string(a.degrees[i]) << "\n";
  os << "unit = " << lincomb_string(a, a.unit) << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const SparseVec& p = a.product(i, j);
      if (p.empty()) continue;
      os << "mul " << a.basis[i] << " * " << a.basis[j] << " = "
         << lincomb_string(a, to_dense(p, a.dim())) << "\n";
    }
  os << "\n";
}

void serialize_embedding(std::ostringstream& os, const Embedding& e) {
  os << "embed " << e.source->name << " -> " << e.target->name << "\n";
  for (std::size_t j = 0; j < e.source->dim(); ++j) {
    Vec ej(e.source->dim(), Scalar(0));
    ej[j] = 1;
    os << "map " << e.source->basis[j] << " = " << lincomb_string(*e.target, e.apply(ej)) << "\n";
  }
  os << "\n";
}

void serialize_trace(std::ostringstream& os, const std::string& name, const TraceData& td) {
  os << "trace " << name << " : " << td.big->name << " -> " << td.sub->name << " deg "
     << to_string(td.degree) << "\n";
  for (std::size_t j = 0; j < td.big->dim(); ++j) {
    Vec ej(td.big->dim(), Scalar(0));
    ej[j] = 1;
    Vec v = td.apply(ej);
    bool nonzero = false;
    for (const auto& c : v) nonzero = nonzero || !is_zero(c);
    if (nonzero) os << "tr(" << td.big->basis[j] << ") = " << lincomb_string(*td.sub, v) << "\n";
  }
  os << "\n";
}

}  // namespace

std::string serialize_problem(const NestedProblem& p) {
  if (!p.tr_A.twists_trivial() || !p.tr_B.twists_trivial())
    throw Error("serialize_problem: tower traces must be untwisted");
  std::ostringstream os;
  os << "# frobex problem file\n";
  os << "lambda_rank " << p.tower.R->arity << "\n";
  os << "sparse = true\n\n";
  serialize_algebra(os, *p.tower.R);
  if (!(*p.tower.B == *p.tower.R)) serialize_algebra(os, *p.tower.B);
  if (!(*p.tower.A == *p.tower.B) && !(*p.tower.A == *p.tower.R))
    serialize_algebra(os, *p.tower.A);
  serialize_embedding(os, p.tower.iota_RB);
  serialize_embedding(os, p.tower.iota_BA);
  serialize_trace(os, "trA", p.tr_A);
  serialize_trace(os, "trB", p.tr_B);
  os << "tower R=" << p.tower.R->name << " B=" << p.tower.B->name << " A=" << p.tower.A->name
     << " trA=trA trB=trB\n";
  os << "rbasis";
  for (const auto& x : p.b_r_basis) {
    // declared R-basis entries are single basis elements; emit their labels
    std::size_t idx = SIZE_MAX;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i)
      if (!is_zero(x.coeffs[i])) {
        if (idx != SIZE_MAX || x.coeffs[i] != 1)
          throw Error("serialize_problem: rbasis entries must be single basis elements");
        idx = i;
      }
    if (idx == SIZE_MAX) throw Error("serialize_problem: zero rbasis entry");
    os << " " << p.tower.B->basis[idx];
  }
  os << "\n";
  return os.str();
}

}  // namespace frobex
