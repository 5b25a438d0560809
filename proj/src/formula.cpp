#include "brex/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace brex {

void Formula::finalize_meta() {
  std::map<int, int> occurrences;
  max_var_ = -1;
  for (const FormulaNode& n : nodes_) {
    if (n.kind == OpKind::Var) {
      ++occurrences[n.var];
      max_var_ = std::max(max_var_, n.var);
    }
  }
  meta_.used_vars.clear();
  meta_.read_once = true;
  for (const auto& [index, count] : occurrences) {
    meta_.used_vars.push_back(index);
    if (count != 1) meta_.read_once = false;
  }
  meta_.arity = static_cast<int>(meta_.used_vars.size());
}

Formula var(int index) {
  if (index < 0) throw std::invalid_argument("var: negative variable index");
  Formula f;
  f.nodes_.push_back(FormulaNode{OpKind::Var, -1, -1, index});
  f.finalize_meta();
  return f;
}

Formula not_(Formula f) {
  const std::int32_t child = f.root();
  f.nodes_.push_back(FormulaNode{OpKind::Not, child, -1, -1});
  f.finalize_meta();
  return f;
}

Formula binary(OpKind op, Formula lhs, Formula rhs) {
  if (op == OpKind::Var || op == OpKind::Not) {
    throw std::invalid_argument("binary: operator must be And, Or or Xor");
  }
  const std::int32_t offset = static_cast<std::int32_t>(lhs.nodes_.size());
  const std::int32_t left_root = lhs.root();
  for (const FormulaNode& n : rhs.nodes_) {
    FormulaNode shifted = n;
    if (shifted.left >= 0) shifted.left += offset;
    if (shifted.right >= 0) shifted.right += offset;
    lhs.nodes_.push_back(shifted);
  }
  const std::int32_t right_root = lhs.root();
  lhs.nodes_.push_back(FormulaNode{op, left_root, right_root, -1});
  lhs.finalize_meta();
  return lhs;
}

namespace {

bool structurally_equal(const Formula& a, std::int32_t ia, const Formula& b,
                        std::int32_t ib) {
  const FormulaNode& na = a.node(ia);
  const FormulaNode& nb = b.node(ib);
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case OpKind::Var:
      return na.var == nb.var;
    case OpKind::Not:
      return structurally_equal(a, na.left, b, nb.left);
    default:
      return structurally_equal(a, na.left, b, nb.left) &&
             structurally_equal(a, na.right, b, nb.right);
  }
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  return structurally_equal(a, a.root(), b, b.root());
}

TruthValue evaluate_k3(const Formula& f, const Assignment& a) {
  if (f.max_var_index() >= a.width()) {
    throw std::invalid_argument("evaluate_k3: variable index beyond assignment width");
  }
  thread_local std::vector<TruthValue> vals;
  vals.resize(static_cast<std::size_t>(f.node_count()));
  for (std::int32_t i = 0; i < f.node_count(); ++i) {
    const FormulaNode& n = f.node(i);
    switch (n.kind) {
      case OpKind::Var:
        vals[i] = a.at(n.var);
        break;
      case OpKind::Not:
        vals[i] = k3_not(vals[n.left]);
        break;
      case OpKind::And:
        vals[i] = k3_and(vals[n.left], vals[n.right]);
        break;
      case OpKind::Or:
        vals[i] = k3_or(vals[n.left], vals[n.right]);
        break;
      case OpKind::Xor:
        vals[i] = k3_xor(vals[n.left], vals[n.right]);
        break;
    }
  }
  return vals[static_cast<std::size_t>(f.root())];
}

ParseError::ParseError(const std::string& message, int pos)
    : std::runtime_error(message + " at position " + std::to_string(pos)),
      position(pos) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int declared_width)
      : text_(text), width_(declared_width) {}

  Formula run() {
    Formula f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", static_cast<int>(pos_));
    }
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula parse_or() {
    Formula lhs = parse_xor();
    while (accept('|')) lhs = or_(std::move(lhs), parse_xor());
    return lhs;
  }

  Formula parse_xor() {
    Formula lhs = parse_and();
    while (accept('^')) lhs = xor_(std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept('&')) lhs = and_(std::move(lhs), parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", static_cast<int>(pos_));
    }
    if (accept('!')) return not_(parse_unary());
    if (accept('(')) {
      Formula inner = parse_or();
      if (!accept(')')) {
        throw ParseError("expected ')'", static_cast<int>(pos_));
      }
      return inner;
    }
    return parse_var();
  }

  Formula parse_var() {
    skip_ws();
    const int start = static_cast<int>(pos_);
    if (pos_ >= text_.size() || text_[pos_] != 'x') {
      throw ParseError("expected variable", start);
    }
    ++pos_;
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("variable index too large", start);
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw ParseError("expected variable index", start);
    if (value == 0) throw ParseError("variable indices start at x1", start);
    const int index = static_cast<int>(value) - 1;
    if (width_ >= 0 && index >= width_) {
      throw ParseError("variable index beyond declared width", start);
    }
    return var(index);
  }

  std::string_view text_;
  int width_;
  std::size_t pos_ = 0;
};

void render_node(const Formula& f, std::int32_t id, std::string& out) {
  const FormulaNode& n = f.node(id);
  switch (n.kind) {
    case OpKind::Var:
      out += 'x';
      out += std::to_string(n.var + 1);
      break;
    case OpKind::Not:
      out += '!';
      render_node(f, n.left, out);
      break;
    default: {
      const char op = n.kind == OpKind::And ? '&' : n.kind == OpKind::Or ? '|' : '^';
      out += '(';
      render_node(f, n.left, out);
      out += ' ';
      out += op;
      out += ' ';
      render_node(f, n.right, out);
      out += ')';
      break;
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text, -1).run(); }

Formula parse_formula(std::string_view text, int declared_width) {
  return Parser(text, declared_width).run();
}

std::string render(const Formula& f) {
  std::string out;
  render_node(f, f.root(), out);
  return out;
}

}  // namespace brex
