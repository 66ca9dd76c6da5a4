#include "frobcoord/lexicon.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace frobcoord {

std::string_view semiring_name(SemiringKind kind) {
  return kind == SemiringKind::real ? RealSemiring::name : BooleanSemiring::name;
}

SpaceAssignment LexiconFile::spaces() const {
  SpaceAssignment s;
  for (const auto& [sym, d] : basic_types) s.set(sym, d);
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) out.push_back(s.substr(start, pos - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TensorSpec parse_spec(std::string_view text, std::size_t line) {
  text = trim(text);
  if (text == "@conj") return ConjSpec{};
  if (text == "@identity") return IdentitySpec{};
  if (text.starts_with("@random(") && text.ends_with(")")) {
    RandomSpec r;
    if (!parse_number(text.substr(8, text.size() - 9), r.seed)) {
      throw ParseError("bad seed in " + std::string(text), line);
    }
    return r;
  }
  if (text.starts_with("[") && text.ends_with("]")) {
    LiteralSpec values;
    const auto body = trim(text.substr(1, text.size() - 2));
    if (body.empty()) throw ParseError("empty literal", line);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = body.find(',', pos);
      const auto item = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
      double v = 0;
      if (!parse_number(item, v)) {
        throw ParseError("bad number '" + std::string(trim(item)) + "'", line);
      }
      values.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return values;
  }
  throw ParseError("unknown tensor spec '" + std::string(text) + "'", line);
}

}  // namespace

std::string format_spec(const TensorSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LiteralSpec>) {
          std::string out = "[";
          for (std::size_t k = 0; k < s.size(); ++k) {
            if (k != 0) out += ", ";
            out += format_double(s[k]);
          }
          return out + "]";
        } else if constexpr (std::is_same_v<T, ConjSpec>) {
          return "@conj";
        } else if constexpr (std::is_same_v<T, RandomSpec>) {
          return "@random(" + std::to_string(s.seed) + ")";
        } else {
          return "@identity";
        }
      },
      spec);
}

LexiconFile parse_lexicon(std::string_view text) {
  LexiconFile file;
  std::set<std::string> symbols;
  std::set<std::pair<std::string, std::string>> seen_entries;
  std::vector<std::string> type_texts;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto parts = split_ws(line);
      if (parts[0] == "#semiring") {
        if (parts.size() != 2) throw ParseError("#semiring takes one argument", line_no);
        if (parts[1] == "real") {
          file.semiring = SemiringKind::real;
        } else if (parts[1] == "bool") {
          file.semiring = SemiringKind::boolean;
        } else {
          throw ParseError("unknown semiring '" + std::string(parts[1]) + "'", line_no);
        }
      } else if (parts[0] == "#type") {
        std::size_t dim = 0;
        if (parts.size() != 3 || !parse_number(parts[2], dim) || dim == 0) {
          throw ParseError("#type takes a symbol and a positive dimension", line_no);
        }
        const std::string sym(parts[1]);
        try {
          const auto t = parse_type(sym);
          if (t.size() != 1 || t[0].adjoint != 0) throw ParseError("", line_no);
        } catch (const Error&) {
          throw ParseError("bad basic type symbol '" + sym + "'", line_no);
        }
        if (!symbols.insert(sym).second) {
          throw ParseError("basic type '" + sym + "' declared twice", line_no);
        }
        file.basic_types.push_back({sym, dim});
      }
      continue;
    }
    const auto colon = line.find(':');
    const auto eq = colon == std::string_view::npos ? colon : line.find('=', colon);
    if (colon == std::string_view::npos || eq == std::string_view::npos) {
      throw ParseError("expected 'word : type = spec'", line_no);
    }
    const auto word = trim(line.substr(0, colon));
    if (word.empty() || split_ws(word).size() != 1) throw ParseError("bad word", line_no);
    LexiconEntry entry;
    entry.word = std::string(word);
    entry.spec = parse_spec(line.substr(eq + 1), line_no);
    entry.line = line_no;
    type_texts.emplace_back(trim(line.substr(colon + 1, eq - colon - 1)));
    file.entries.push_back(std::move(entry));
  }

  // Types are resolved once every #type directive has been seen.
  for (std::size_t k = 0; k < file.entries.size(); ++k) {
    auto& e = file.entries[k];
    try {
      e.type = parse_type(type_texts[k], &symbols);
    } catch (const UnknownBaseSymbol& ex) {
      throw UndeclaredSymbol("word '" + e.word + "' (line " + std::to_string(e.line) +
                             "): " + ex.what());
    } catch (const SyntaxError& ex) {
      throw ParseError(std::string("bad type: ") + ex.what(), e.line);
    }
    if (!seen_entries.insert({e.word, format_type(e.type)}).second) {
      throw ParseError("duplicate entry for '" + e.word + "' with type " + format_type(e.type),
                       e.line);
    }
  }
  return file;
}

std::string format_lexicon(const LexiconFile& file) {
  std::string out = "#semiring " + std::string(semiring_name(file.semiring)) + "\n";
  for (const auto& [sym, d] : file.basic_types) {
    out += "#type " + sym + " " + std::to_string(d) + "\n";
  }
  for (const auto& e : file.entries) {
    out += e.word + " : " + format_type(e.type) + " = " + format_spec(e.spec) + "\n";
  }
  return out;
}

LexiconFile read_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

void save_lexicon(const LexiconFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write lexicon file '" + path.string() + "'");
  out << format_lexicon(file);
  if (!out) throw Error("failed writing lexicon file '" + path.string() + "'");
}

AnyLexicon realize_any(const LexiconFile& file) {
  if (file.semiring == SemiringKind::boolean) return realize<BooleanSemiring>(file);
  return realize<RealSemiring>(file);
}

AnyLexicon load_lexicon(const std::filesystem::path& path) {
  return realize_any(read_lexicon_file(path));
}

}  // namespace frobcoord
