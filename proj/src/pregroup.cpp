#include "frobcoord/pregroup.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "frobcoord/errors.hpp"
#include "frobcoord/tensor.hpp"

namespace frobcoord {

PregroupType concat(const PregroupType& a, const PregroupType& b) {
  PregroupType out = a;
  out.simples.insert(out.simples.end(), b.simples.begin(), b.simples.end());
  return out;
}

PregroupType adjoint_right(const PregroupType& t) {
  PregroupType out;
  for (auto it = t.simples.rbegin(); it != t.simples.rend(); ++it) {
    out.simples.push_back(it->right_adjoint());
  }
  return out;
}

PregroupType adjoint_left(const PregroupType& t) {
  PregroupType out;
  for (auto it = t.simples.rbegin(); it != t.simples.rend(); ++it) {
    out.simples.push_back(it->left_adjoint());
  }
  return out;
}

PregroupType coordinator_type(const PregroupType& x) {
  if (x.empty()) throw EmptyType("coordinator_type needs a non-empty conjunct type");
  return concat(concat(adjoint_right(x), x), adjoint_left(x));
}

bool is_coordinator_type(const PregroupType& t, PregroupType* conjunct) {
  if (t.empty() || t.size() % 3 != 0) return false;
  const std::size_t k = t.size() / 3;
  PregroupType x;
  x.simples.assign(t.simples.begin() + static_cast<std::ptrdiff_t>(k),
                   t.simples.begin() + static_cast<std::ptrdiff_t>(2 * k));
  if (coordinator_type(x) != t) return false;
  if (conjunct != nullptr) *conjunct = std::move(x);
  return true;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

PregroupType parse_type(std::string_view text, const std::set<std::string>* known_bases) {
  PregroupType out;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (true) {
    while (pos < n && is_space(text[pos])) ++pos;
    if (pos == n) break;
    if (!is_ident_start(text[pos])) {
      throw SyntaxError(std::string("expected a base symbol, found '") + text[pos] + "'", pos);
    }
    const std::size_t start = pos;
    while (pos < n && is_ident_char(text[pos])) ++pos;
    SimpleType simple{std::string(text.substr(start, pos - start)), 0};
    if (known_bases != nullptr && !known_bases->contains(simple.base)) {
      throw UnknownBaseSymbol("undeclared base symbol '" + simple.base + "' at position " +
                              std::to_string(start));
    }
    while (pos < n && text[pos] == '.') {
      if (pos + 1 >= n || (text[pos + 1] != 'l' && text[pos + 1] != 'r')) {
        throw SyntaxError("expected 'l' or 'r' after '.'", pos + 1);
      }
      simple.adjoint += text[pos + 1] == 'r' ? 1 : -1;
      pos += 2;
    }
    if (pos < n && !is_space(text[pos])) {
      throw SyntaxError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
    out.simples.push_back(std::move(simple));
  }
  if (out.empty()) throw SyntaxError("empty type", 0);
  return out;
}

std::string format_simple(const SimpleType& s) { return s.base + adjoint_suffix(s.adjoint); }

std::string format_type(const PregroupType& t) {
  std::string out;
  for (const auto& s : t) {
    if (!out.empty()) out += ' ';
    out += format_simple(s);
  }
  return out;
}

std::vector<SimpleType> Derivation::flattened() const {
  std::vector<SimpleType> out;
  for (const auto& t : token_types) out.insert(out.end(), t.begin(), t.end());
  return out;
}

TokenWire Derivation::locate(std::size_t flat) const {
  for (std::size_t tok = 0; tok < token_types.size(); ++tok) {
    if (flat < token_types[tok].size()) return {tok, flat};
    flat -= token_types[tok].size();
  }
  throw ArityError("flattened index out of range");
}

std::size_t Derivation::flat_index(TokenWire tw) const {
  if (tw.token >= token_types.size() || tw.wire >= token_types[tw.token].size()) {
    throw ArityError("token wire out of range");
  }
  std::size_t flat = 0;
  for (std::size_t tok = 0; tok < tw.token; ++tok) flat += token_types[tok].size();
  return flat + tw.wire;
}

PregroupType Derivation::residual_type() const {
  const auto flat = flattened();
  PregroupType out;
  for (auto r : residual) out.simples.push_back(flat.at(r));
  return out;
}

bool can_contract(const SimpleType& left, const SimpleType& right) {
  return left.base == right.base && right.adjoint == left.adjoint + 1;
}

std::optional<std::string> find_derivation_violation(const Derivation& d) {
  const auto flat = d.flattened();
  const std::size_t n = flat.size();
  std::vector<int> role(n, 0);  // 0 unused, 1 linked, 2 residual
  for (std::size_t k = 0; k < d.links.size(); ++k) {
    const auto& l = d.links[k];
    if (l.left >= l.right || l.right >= n) return "link out of range or not ordered";
    if (k > 0 && !(d.links[k - 1] < l)) return "links are not sorted";
    if (role[l.left] != 0 || role[l.right] != 0) return "links are not disjoint";
    role[l.left] = role[l.right] = 1;
    if (!can_contract(flat[l.left], flat[l.right])) {
      return "link (" + std::to_string(l.left) + "," + std::to_string(l.right) +
             ") does not contract " + format_simple(flat[l.left]) + " with " +
             format_simple(flat[l.right]);
    }
  }
  for (std::size_t k = 0; k < d.residual.size(); ++k) {
    const auto r = d.residual[k];
    if (r >= n) return "residual index out of range";
    if (k > 0 && d.residual[k - 1] >= r) return "residual is not increasing";
    if (role[r] != 0) return "residual position is also linked";
    role[r] = 2;
  }
  if (std::find(role.begin(), role.end(), 0) != role.end()) {
    return "some position is neither linked nor residual";
  }
  for (const auto& a : d.links) {
    for (const auto& b : d.links) {
      if (a.left < b.left && b.left < a.right && a.right < b.right) return "links cross";
    }
    for (auto r : d.residual) {
      if (a.left < r && r < a.right) return "residual position nested under a link";
    }
  }
  return std::nullopt;
}

namespace {

class Reducer {
 public:
  Reducer(const std::vector<PregroupType>& tokens, const PregroupType& target)
      : target_(target) {
    for (const auto& t : tokens) flat_.insert(flat_.end(), t.begin(), t.end());
    n_ = flat_.size();
    m_ = target_.size();
    empty_.assign((n_ + 1) * (n_ + 1), 0);
    for (std::size_t a = 0; a <= n_; ++a) empty_[idx(a, a)] = 1;
    for (std::size_t len = 2; len <= n_; len += 2) {
      for (std::size_t a = 0; a + len <= n_; ++a) {
        const std::size_t b = a + len;
        for (std::size_t j = a + 1; j < b; j += 2) {
          if (linkable(a, j) && reducible(a + 1, j) && reducible(j + 1, b)) {
            empty_[idx(a, b)] = 1;
            break;
          }
        }
      }
    }
    suffix_.assign((n_ + 1) * (m_ + 1), 0);
    suffix_[sidx(n_, m_)] = 1;
    for (std::size_t a = n_; a-- > 0;) {
      for (std::size_t t = 0; t <= m_; ++t) {
        bool ok = residual_ok(a, t);
        for (std::size_t j = a + 1; !ok && j < n_; j += 2) ok = link_ok(a, j, t);
        suffix_[sidx(a, t)] = ok ? 1 : 0;
      }
    }
  }

  bool grammatical() const { return suffix_[sidx(0, 0)] != 0; }

  Derivation canonical(const std::vector<PregroupType>& tokens) const {
    Derivation d;
    d.token_types = tokens;
    std::size_t a = 0, t = 0;
    while (a < n_) {
      bool linked = false;
      for (std::size_t j = a + 1; j < n_; j += 2) {
        if (link_ok(a, j, t)) {
          d.links.push_back({a, j});
          canonical_empty(a + 1, j, d.links);
          a = j + 1;
          linked = true;
          break;
        }
      }
      if (!linked) {
        d.residual.push_back(a);
        ++a;
        ++t;
      }
    }
    std::sort(d.links.begin(), d.links.end());
    return d;
  }

  // Continuation-passing enumeration; a continuation returns false to stop.
  using Next = std::function<bool()>;

  bool enumerate_top(std::size_t a, std::size_t t, const Next& emit) {
    if (a == n_) return t == m_ ? emit() : true;
    for (std::size_t j = a + 1; j < n_; j += 2) {
      if (!link_ok(a, j, t)) continue;
      links_.push_back({a, j});
      const bool more = enumerate_empty(a + 1, j, [&] { return enumerate_top(j + 1, t, emit); });
      links_.pop_back();
      if (!more) return false;
    }
    if (residual_ok(a, t)) {
      residual_.push_back(a);
      const bool more = enumerate_top(a + 1, t + 1, emit);
      residual_.pop_back();
      if (!more) return false;
    }
    return true;
  }

  const std::vector<Link>& links() const { return links_; }
  const std::vector<std::size_t>& residual() const { return residual_; }

 private:
  std::size_t idx(std::size_t a, std::size_t b) const { return a * (n_ + 1) + b; }
  std::size_t sidx(std::size_t a, std::size_t t) const { return a * (m_ + 1) + t; }

  bool linkable(std::size_t a, std::size_t b) const { return can_contract(flat_[a], flat_[b]); }
  bool reducible(std::size_t a, std::size_t b) const { return empty_[idx(a, b)] != 0; }
  bool suffix(std::size_t a, std::size_t t) const { return suffix_[sidx(a, t)] != 0; }

  bool residual_ok(std::size_t a, std::size_t t) const {
    return t < m_ && flat_[a] == target_[t] && suffix(a + 1, t + 1);
  }
  bool link_ok(std::size_t a, std::size_t j, std::size_t t) const {
    return linkable(a, j) && reducible(a + 1, j) && suffix(j + 1, t);
  }
  bool inner_ok(std::size_t a, std::size_t j, std::size_t b) const {
    return linkable(a, j) && reducible(a + 1, j) && reducible(j + 1, b);
  }

  void canonical_empty(std::size_t a, std::size_t b, std::vector<Link>& out) const {
    while (a < b) {
      std::size_t j = a + 1;
      while (!inner_ok(a, j, b)) j += 2;
      out.push_back({a, j});
      canonical_empty(a + 1, j, out);
      a = j + 1;
    }
  }

  bool enumerate_empty(std::size_t a, std::size_t b, const Next& next) {
    if (a == b) return next();
    for (std::size_t j = a + 1; j < b; j += 2) {
      if (!inner_ok(a, j, b)) continue;
      links_.push_back({a, j});
      const bool more = enumerate_empty(a + 1, j, [&] { return enumerate_empty(j + 1, b, next); });
      links_.pop_back();
      if (!more) return false;
    }
    return true;
  }

  const PregroupType& target_;
  std::vector<SimpleType> flat_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<char> empty_;
  std::vector<char> suffix_;
  std::vector<Link> links_;
  std::vector<std::size_t> residual_;
};

}  // namespace

std::optional<Derivation> reduce(const std::vector<PregroupType>& tokens,
                                 const PregroupType& target) {
  if (tokens.empty()) throw EmptyType("reduce needs at least one token");
  Reducer r(tokens, target);
  if (!r.grammatical()) return std::nullopt;
  return r.canonical(tokens);
}

std::vector<Derivation> enumerate_reductions(const std::vector<PregroupType>& tokens,
                                             const PregroupType& target, std::size_t cap) {
  if (cap == 0) throw ArityError("enumerate_reductions needs cap >= 1");
  std::vector<Derivation> out;
  if (tokens.empty()) return out;
  Reducer r(tokens, target);
  if (!r.grammatical()) return out;
  r.enumerate_top(0, 0, [&] {
    Derivation d;
    d.token_types = tokens;
    d.links = r.links();
    d.residual = r.residual();
    std::sort(d.links.begin(), d.links.end());
    out.push_back(std::move(d));
    return out.size() < cap;
  });
  return out;
}

std::string format_links(const Derivation& d) {
  std::string out;
  for (const auto& l : d.links) {
    const auto a = d.locate(l.left);
    const auto b = d.locate(l.right);
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(a.token) + "." + std::to_string(a.wire) + "–" +
           std::to_string(b.token) + "." + std::to_string(b.wire) + ")";
  }
  return out;
}

std::string ascii_diagram(const Derivation& d, const std::vector<std::string>& words) {
  const auto flat = d.flattened();
  const std::size_t n = flat.size();

  // Column layout: each simple gets a column at least as wide as its label;
  // a token's last column widens to fit the word.
  std::vector<std::size_t> width(n), column(n);
  std::size_t pos = 0;
  for (std::size_t tok = 0; tok < d.token_types.size(); ++tok) {
    const std::size_t first = pos;
    std::size_t total = 0;
    for (std::size_t w = 0; w < d.token_types[tok].size(); ++w, ++pos) {
      width[pos] = format_simple(flat[pos]).size() + 2;
      total += width[pos];
    }
    const std::size_t word_len = tok < words.size() ? words[tok].size() + 2 : 0;
    if (pos > first && word_len > total) width[pos - 1] += word_len - total;
  }
  std::size_t line_len = 0;
  for (std::size_t k = 0; k < n; ++k) {
    column[k] = line_len;
    line_len += width[k];
  }

  std::string word_line(line_len, ' ');
  std::string type_line(line_len, ' ');
  pos = 0;
  for (std::size_t tok = 0; tok < d.token_types.size(); ++tok) {
    if (tok < words.size() && pos < n) word_line.replace(column[pos], words[tok].size(), words[tok]);
    for (std::size_t w = 0; w < d.token_types[tok].size(); ++w, ++pos) {
      const auto label = format_simple(flat[pos]);
      type_line.replace(column[pos], label.size(), label);
    }
  }

  // A link's row is one more than the deepest link nested inside it.
  std::vector<std::size_t> row(d.links.size(), 1);
  std::size_t rows = 0;
  std::vector<std::size_t> order(d.links.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return d.links[x].right - d.links[x].left < d.links[y].right - d.links[y].left;
  });
  for (auto k : order) {
    for (std::size_t j = 0; j < d.links.size(); ++j) {
      if (d.links[k].left < d.links[j].left && d.links[j].right < d.links[k].right) {
        row[k] = std::max(row[k], row[j] + 1);
      }
    }
    rows = std::max(rows, row[k]);
  }

  std::string out = word_line + "\n" + type_line + "\n";
  for (std::size_t r = 1; r <= std::max<std::size_t>(rows, 1); ++r) {
    std::string line(line_len, ' ');
    for (std::size_t k = 0; k < d.links.size(); ++k) {
      const auto a = column[d.links[k].left];
      const auto b = column[d.links[k].right];
      if (row[k] > r) {
        line[a] = '|';
        line[b] = '|';
      } else if (row[k] == r) {
        line[a] = '+';
        line[b] = '+';
        for (auto c = a + 1; c < b; ++c) line[c] = '-';
      }
    }
    for (auto res : d.residual) line[column[res]] = '|';
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace frobcoord
