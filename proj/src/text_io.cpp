#include "submod/text_io.hpp"

#include <charconv>
#include <sstream>

namespace submod {

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Non-blank lines with comments removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!trim(line).empty()) out.push_back({line, number});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

std::size_t column_of(const Line& l, std::string_view part) {
  return static_cast<std::size_t>(part.data() - l.text.data()) + 1;
}

/// Value of a `key:` line, or nullopt when the line has another key.
std::optional<std::string_view> header_value(const Line& l, std::string_view key) {
  const std::string_view t = trim(l.text);
  if (t.size() <= key.size() || t.substr(0, key.size()) != key || t[key.size()] != ':') return std::nullopt;
  return trim(t.substr(key.size() + 1));
}

std::string_view require_header(const std::vector<Line>& lines, std::size_t idx, std::string_view key) {
  if (idx >= lines.size()) throw ParseError("missing '" + std::string(key) + ":' line", lines.empty() ? 1 : lines.back().number + 1, 1);
  auto v = header_value(lines[idx], key);
  if (!v) throw ParseError("expected '" + std::string(key) + ":' line", lines[idx].number, column_of(lines[idx], trim(lines[idx].text)));
  if (v->empty()) throw ParseError("empty '" + std::string(key) + ":' value", lines[idx].number, lines[idx].text.size() + 1);
  return *v;
}

RingPtr parse_ring_at(std::string_view spec, const Line& l) {
  try {
    return Ring::parse(spec);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), l.number, column_of(l, spec));
  }
}

std::vector<std::pair<std::string, std::size_t>> split_with_offsets(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::string cur;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    const bool blank = ch == ' ' || ch == '\t' || ch == '\r';
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (blank && depth <= 0) {
      if (!cur.empty()) out.emplace_back(std::move(cur), start);
      cur.clear();
      depth = 0;
      continue;
    }
    if (blank) continue;
    if (cur.empty()) start = i;
    cur += ch;
  }
  if (!cur.empty()) out.emplace_back(std::move(cur), start);
  return out;
}

Row parse_row_at(const Ring& r, const Line& l, std::string_view body, std::size_t cols) {
  Row row;
  for (const auto& [tok, at] : split_with_offsets(body)) {
    const std::size_t col = column_of(l, body.substr(at));
    try {
      row.push_back(r.parse_element(tok));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), l.number, col);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), l.number, col);
    }
  }
  if (row.size() != cols)
    throw ParseError("expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()), l.number,
                     column_of(l, trim(l.text)));
  return row;
}

struct Header {
  RingPtr ring;
  std::size_t cols = 0;
  std::optional<Row> ambient;
  std::size_t next = 0;
};

Header parse_header(const std::vector<Line>& lines) {
  Header h;
  const auto spec = require_header(lines, 0, "ring");
  h.ring = parse_ring_at(spec, lines[0]);
  const auto cols = require_header(lines, 1, "cols");
  h.cols = parse_unsigned(cols, lines[1].number, column_of(lines[1], cols));
  h.next = 2;
  if (h.next < lines.size())
    if (auto amb = header_value(lines[h.next], "ambient")) {
      h.ambient = parse_row_at(*h.ring, lines[h.next], *amb, h.cols);
      ++h.next;
    }
  return h;
}

Ambient make_ambient(const Header& h) {
  return h.ambient ? Ambient::with_ideals(h.ring, *h.ambient) : Ambient::full(h.ring, h.cols);
}

}  // namespace

std::uint64_t parse_unsigned(std::string_view text, std::size_t line, std::size_t column) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected a non-negative integer, got '" + std::string(text) + "'", line, column);
  return v;
}

std::vector<std::string> split_literals(std::string_view line) {
  std::vector<std::string> out;
  for (auto& [tok, at] : split_with_offsets(line)) out.push_back(std::move(tok));
  return out;
}

Ambient MatrixFile::ambient() const {
  return ambient_ideals ? Ambient::with_ideals(matrix.ring_ptr(), *ambient_ideals)
                        : Ambient::full(matrix.ring_ptr(), matrix.cols());
}

SubModule MatrixFile::module() const { return SubModule::from_generators(ambient(), matrix); }

MatrixFile parse_matrix_file(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = parse_header(lines);
  Matrix m(h.ring, 0, h.cols);
  for (std::size_t i = h.next; i < lines.size(); ++i) m.append_row(parse_row_at(*h.ring, lines[i], lines[i].text, h.cols));
  return MatrixFile{std::move(m), h.ambient};
}

Matrix parse_matrix(std::string_view text) { return parse_matrix_file(text).matrix; }

SubModule parse_module(std::string_view text) { return parse_matrix_file(text).module(); }

std::string format_row(const Ring& r, std::span<const Elem> row) {
  std::string out;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) out += ' ';
    out += r.format(row[j]);
  }
  return out;
}

std::string format_matrix(const Matrix& m) {
  std::string out = "ring: " + m.ring().name() + "\ncols: " + std::to_string(m.cols()) + "\n";
  for (const auto& row : m.row_list()) out += format_row(m.ring(), row) + "\n";
  return out;
}

namespace {

std::string header_text(const Ambient& a) {
  std::string out = "ring: " + a.ring->name() + "\ncols: " + std::to_string(a.n) + "\n";
  if (!a.is_full()) out += "ambient: " + format_row(*a.ring, a.column_ideals) + "\n";
  return out;
}

}  // namespace

std::string format_module(const SubModule& m) {
  std::string out = header_text(m.ambient());
  for (const auto& row : m.basis().row_list()) out += format_row(m.ring(), row) + "\n";
  return out;
}

CodeFile parse_code_file(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = parse_header(lines);
  const Ambient amb = make_ambient(h);
  std::vector<SubModule> words;
  Matrix cur(h.ring, 0, h.cols);
  bool open = false;
  auto close = [&](const Line& at) {
    if (!open) throw ParseError("empty codeword block", at.number, 1);
    try {
      words.push_back(SubModule::from_generators(amb, cur));
    } catch (const DomainError& e) {
      throw DomainError("codeword " + std::to_string(words.size() + 1) + ": " + e.what());
    }
    cur = Matrix(h.ring, 0, h.cols);
    open = false;
  };
  for (std::size_t i = h.next; i < lines.size(); ++i) {
    const auto t = trim(lines[i].text);
    if (t == "--") {
      close(lines[i]);
      continue;
    }
    if (t == "0") {
      // A lone 0 in a 1-column file is a row; elsewhere it marks the zero module.
      if (h.cols != 1) {
        open = true;
        continue;
      }
    }
    cur.append_row(parse_row_at(*h.ring, lines[i], lines[i].text, h.cols));
    open = true;
  }
  if (open) close(lines.back());
  return CodeFile{amb, std::move(words)};
}

Code parse_code(std::string_view text) { return Code::from_words(parse_code_file(text).words); }

std::string format_code(const Code& c) {
  std::string out = header_text(c.ambient());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += "--\n";
    const auto& b = c.words()[i].basis();
    if (b.empty()) out += "0\n";
    for (const auto& row : b.row_list()) out += format_row(c.words()[i].ring(), row) + "\n";
  }
  return out;
}

Config Config::parse(std::string_view text) {
  Config c;
  for (const auto& l : content_lines(text)) {
    const auto t = trim(l.text);
    auto sep = t.find_first_of(":=");
    if (sep == std::string_view::npos) throw ParseError("expected 'key: value'", l.number, column_of(l, t));
    const std::string key(trim(t.substr(0, sep)));
    const std::string value(trim(t.substr(sep + 1)));
    if (key.empty()) throw ParseError("empty key", l.number, column_of(l, t));
    if (c.entries_.count(key)) throw ParseError("duplicate key '" + key + "'", l.number, column_of(l, t));
    c.entries_[key] = ConfigEntry{value, l.number};
  }
  return c;
}

const std::string& Config::text(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ParseError("config: missing key '" + key + "'");
  return it->second.value;
}

std::string Config::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

std::uint64_t Config::integer(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ParseError("config: missing key '" + key + "'");
  return parse_unsigned(it->second.value, it->second.line, 1);
}

std::uint64_t Config::integer_or(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

}  // namespace submod
