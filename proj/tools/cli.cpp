// submod: command-line front end for the submodule-code kernel.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "submod/bounds.hpp"
#include "submod/channel.hpp"
#include "submod/text_io.hpp"

using namespace submod;
using nlohmann::json;

namespace {

enum class Format { human, machine };

struct Globals {
  std::string format = "human";
  std::uint64_t seed = 0;
  bool seed_given = false;
  unsigned threads = 1;
  bool verbose = false;

  Format fmt() const { return format == "machine" ? Format::machine : Format::human; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto load(const std::string& path, F parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what(),
                     e.line(), e.column());
  }
}

MatrixFile load_matrix(const std::string& path) { return load(path, parse_matrix_file); }
SubModule load_module(const std::string& path) { return load_matrix(path).module(); }
CodeFile load_code_file(const std::string& path) { return load(path, parse_code_file); }
Code load_code(const std::string& path) { return Code::from_words(load_code_file(path).words); }

json row_json(const Ring& r, std::span<const Elem> row) {
  json out = json::array();
  for (Elem e : row) out.push_back(r.format(e));
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& row : m.row_list()) rows.push_back(row_json(m.ring(), row));
  return {{"ring", m.ring().name()}, {"cols", m.cols()}, {"rows", rows}};
}

json module_json(const SubModule& m) {
  json out = matrix_json(m.basis());
  if (!m.ambient().is_full()) out["ambient"] = row_json(m.ring(), m.ambient().column_ideals);
  out["length"] = m.length();
  return out;
}

json code_json(const Code& c) {
  json words = json::array();
  for (const auto& w : c.words()) words.push_back(module_json(w));
  return {{"ring", c.ambient().ring->name()},
          {"cols", c.ambient().n},
          {"size", c.size()},
          {"constant_length", c.constant_length()},
          {"min_distance", c.min_distance()},
          {"words", words}};
}

json decode_json(const DecodeResult& d) {
  json out = {{"status", to_string(d.status)}, {"certified", d.certified}};
  out["distance"] = d.index || d.second_distance ? json(d.distance) : json(nullptr);
  out["index"] = d.index ? json(*d.index) : json(nullptr);
  out["second_distance"] = d.second_distance ? json(*d.second_distance) : json(nullptr);
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string decode_line(const DecodeResult& d) {
  std::string s = to_string(d.status);
  if (d.index) s += " word " + std::to_string(*d.index);
  if (d.index || d.second_distance) s += " distance " + std::to_string(d.distance);
  if (d.second_distance) s += " next " + std::to_string(*d.second_distance);
  if (d.certified) s += " certified";
  return s;
}

Ambient ambient_from(const std::string& ring, std::size_t n, const std::string& ideals) {
  auto r = Ring::parse(ring);
  if (ideals.empty()) return Ambient::full(r, n);
  Row row;
  for (const auto& tok : split_literals(ideals)) row.push_back(r->parse_element(tok));
  if (row.size() != n) throw ParseError("--ambient needs " + std::to_string(n) + " entries");
  return Ambient::with_ideals(r, row);
}

void print_matrix(const Globals& g, const Matrix& m) {
  if (g.fmt() == Format::machine)
    emit(matrix_json(m));
  else
    std::cout << format_matrix(m);
}

void print_code(const Globals& g, const Code& c) {
  if (g.fmt() == Format::machine) {
    emit(code_json(c));
    return;
  }
  std::cout << "# " << c.size() << " words, length " << c.constant_length() << ", minimum distance "
            << c.min_distance() << "\n"
            << format_code(c);
}

void print_bound(const Globals& g, const BoundValue& b) {
  if (g.fmt() == Format::machine)
    emit({{"name", b.name},
          {"value", b.value},
          {"method", b.method == BoundMethod::closed_form ? "closed_form" : "enumeration"},
          {"detail", b.detail}});
  else
    std::cout << b.value << "\n";
}

ChannelConfig channel_from(const Config& cfg, const std::filesystem::path& base, const Globals& g) {
  ChannelConfig c;
  c.ring = Ring::parse(cfg.text("ring"));
  c.n = cfg.integer("n");
  c.N = cfg.integer_or("N", 0);
  c.t = cfg.integer_or("t", 0);
  c.v = static_cast<unsigned>(cfg.integer_or("v", 0));
  c.trials = cfg.integer_or("trials", 1000);
  c.seed = g.seed_given ? g.seed : cfg.integer_or("seed", 0);
  c.threads = g.threads > 1 ? g.threads : static_cast<unsigned>(cfg.integer_or("threads", 1));
  const std::string model = cfg.text_or("model", "channel");
  if (model == "channel")
    c.model = NoiseModel::channel;
  else if (model == "within_radius")
    c.model = NoiseModel::within_radius;
  else
    throw ParseError("config: model must be channel or within_radius", cfg.entries().at("model").line, 1);
  if (cfg.has("code")) {
    std::filesystem::path p(cfg.text("code"));
    if (p.is_relative()) p = base / p;
    c.code = transport(load_code(p.string()), c.ring);
  } else {
    const std::string how = cfg.text_or("construction", "spread");
    if (how == "spread") {
      c.code = construct_spread(c.ring, c.n, static_cast<unsigned>(cfg.integer("k")));
    } else if (how == "trapping") {
      TrappingParams p{c.n, c.N, c.t, static_cast<unsigned>(cfg.integer_or("u", c.v)), c.v};
      c.code = error_trapping_codebook(c.ring, p).code;
    } else {
      throw ParseError("config: construction must be spread or trapping", cfg.entries().at("construction").line, 1);
    }
  }
  return c;
}

int run(int argc, char** argv) {
  CLI::App app{"Submodule codes over finite principal ideal rings"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output rendering")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--seed", g.seed, "Seed for every random draw")->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--threads", g.threads, "Worker threads for simulate")->check(CLI::Range(1u, 256u));
  app.add_flag("--verbose", g.verbose, "Per-trial logs for simulate");

  std::string file_a, file_b, vector_text, ring_text, ambient_text;
  std::size_t n = 0;
  unsigned k = 0, delta = 0, ell = 0;
  std::uint64_t cap = kDefaultModuleCap;
  std::vector<std::string> files;

  auto* ref = app.add_subcommand("ref", "Row-echelon form");
  ref->add_option("matrix", file_a)->required();
  ref->callback([&] { print_matrix(g, row_echelon(load_matrix(file_a).matrix).base); });

  auto* rr = app.add_subcommand("rref", "Reduced row-echelon form");
  rr->add_option("matrix", file_a)->required();
  rr->callback([&] { print_matrix(g, rref(load_matrix(file_a).matrix).base); });

  auto* chk = app.add_subcommand("check-ref", "Decide whether a matrix is in row-echelon form");
  chk->add_option("matrix", file_a)->required();
  chk->callback([&] {
    const auto v = is_row_echelon(load_matrix(file_a).matrix);
    if (g.fmt() == Format::machine)
      emit({{"row_echelon", v.yes}, {"reason", v.reason}});
    else
      std::cout << (v.yes ? "YES" : "NO") << (v.reason.empty() ? "" : ": " + v.reason) << "\n";
  });

  auto* mem = app.add_subcommand("member", "Test whether a vector lies in the row module");
  mem->add_option("matrix", file_a)->required();
  mem->add_option("vector", vector_text, "Whitespace-separated entries")->required();
  mem->callback([&] {
    const auto m = load_matrix(file_a);
    const Ring& r = m.matrix.ring();
    Row v;
    for (const auto& tok : split_literals(vector_text)) v.push_back(r.parse_element(tok));
    if (v.size() != m.matrix.cols()) throw ParseError("vector has " + std::to_string(v.size()) + " entries");
    const auto e = rref(m.matrix).base;
    const auto res = member(v, e);
    if (g.fmt() == Format::machine) {
      emit({{"member", res.member},
            {"coefficients", res.member ? row_json(r, res.coefficients) : json::array()},
            {"basis", matrix_json(e)}});
    } else {
      std::cout << (res.member ? "YES" : "NO") << "\n";
      if (res.member) std::cout << "coefficients: " << format_row(r, res.coefficients) << "\n";
    }
  });

  auto* len = app.add_subcommand("length", "Length of the row module");
  len->add_option("module", file_a)->required();
  len->callback([&] {
    const auto m = load_module(file_a);
    if (g.fmt() == Format::machine)
      emit(module_json(m));
    else
      std::cout << m.length() << "\n";
  });

  auto* dist = app.add_subcommand("distance", "Submodule distance");
  dist->add_option("a", file_a)->required();
  dist->add_option("b", file_b)->required();
  dist->callback([&] {
    const auto a = load_module(file_a), b = load_module(file_b);
    const unsigned d = distance(a, b);
    if (g.fmt() == Format::machine)
      emit({{"distance", d},
            {"length_a", a.length()},
            {"length_b", b.length()},
            {"length_sum", sum(a, b).length()},
            {"length_intersection", intersection_length(a, b)}});
    else
      std::cout << d << "\n";
  });

  auto* le = app.add_subcommand("loss-error", "Erasures and errors of a received module");
  le->add_option("sent", file_a)->required();
  le->add_option("received", file_b)->required();
  le->callback([&] {
    const auto r = loss_and_error(load_module(file_a), load_module(file_b));
    if (g.fmt() == Format::machine)
      emit({{"rho", r.rho}, {"e", r.e}});
    else
      std::cout << "rho " << r.rho << "\ne " << r.e << "\n";
  });

  auto* sm = app.add_subcommand("sum", "Sum of two submodules");
  sm->add_option("a", file_a)->required();
  sm->add_option("b", file_b)->required();
  sm->callback([&] {
    const auto s = sum(load_module(file_a), load_module(file_b));
    if (g.fmt() == Format::machine)
      emit(module_json(s));
    else
      std::cout << format_module(s);
  });

  auto* en = app.add_subcommand("enumerate", "Submodules of a given length");
  en->add_option("module", file_a, "Rows span the module to search; no rows means the ambient")->required();
  en->add_option("--length", ell)->required();
  en->add_option("--cap", cap);
  en->callback([&] {
    const auto f = load_matrix(file_a);
    const SubModule top = f.matrix.empty() ? SubModule::whole(f.ambient()) : f.module();
    std::vector<SubModule> found;
    for (auto& m : submodules_of(top, ell, cap))
      if (m.length() == ell) found.push_back(std::move(m));
    if (g.fmt() == Format::machine) {
      json mods = json::array();
      for (const auto& m : found) mods.push_back(module_json(m));
      emit({{"length", ell}, {"count", found.size()}, {"modules", mods}});
      return;
    }
    std::cout << "# " << found.size() << " submodules of length " << ell << "\n";
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (i == 0) {
        std::cout << format_module(found[i]);
        if (found[i].basis().empty()) std::cout << "0\n";
        continue;
      }
      std::cout << "--\n";
      if (found[i].basis().empty()) std::cout << "0\n";
      for (const auto& row : found[i].basis().row_list()) std::cout << format_row(found[i].ring(), row) << "\n";
    }
  });

  auto* con = app.add_subcommand("construct", "Code constructions");
  con->require_subcommand(1);
  auto* spread = con->add_subcommand("spread", "Partial spread code over a chain ring");
  spread->add_option("--ring", ring_text)->required();
  spread->add_option("--n", n)->required();
  spread->add_option("--k", k)->required();
  spread->callback([&] { print_code(g, construct_spread(Ring::parse(ring_text), n, k)); });
  auto* tensor = con->add_subcommand("tensor", "Lift a code over Z_p to a ring of characteristic p");
  tensor->add_option("code", file_a)->required();
  tensor->add_option("--ring", ring_text)->required();
  tensor->callback([&] { print_code(g, construct_tensor(load_code(file_a), Ring::parse(ring_text))); });
  auto* product = con->add_subcommand("product", "All combinations of factor codewords");
  product->add_option("codes", files)->required()->expected(1, -1);
  auto* stacked = con->add_subcommand("stacked", "Index-aligned combination of factor codewords");
  stacked->add_option("codes", files)->required()->expected(1, -1);
  auto combine = [&](bool stack) {
    std::vector<Code> codes;
    for (const auto& f : files) codes.push_back(load_code(f));
    print_code(g, (stack ? construct_stacked(codes) : construct_product(codes)).code);
  };
  product->callback([&] { combine(false); });
  stacked->callback([&] { combine(true); });

  auto* bound = app.add_subcommand("bound", "Cardinality bounds");
  bound->require_subcommand(1);
  bool enumerate_only = false;
  for (const char* which : {"singleton", "sphere"}) {
    auto* b = bound->add_subcommand(which, std::string(which) + " bound");
    b->add_option("--ring", ring_text)->required();
    b->add_option("--n", n)->required();
    b->add_option("--k", k)->required();
    b->add_option("--delta", delta)->required();
    b->add_option("--ambient", ambient_text, "Column ideal generators");
    b->add_option("--cap", cap);
    b->add_flag("--enumerate", enumerate_only, "Skip closed forms");
    const bool singleton = std::string(which) == "singleton";
    b->callback([&, singleton] {
      const Ambient amb = ambient_from(ring_text, n, ambient_text);
      BoundValue v;
      if (singleton)
        v = enumerate_only ? bound_singleton_enumerated(amb, k, delta, cap) : bound_singleton(amb, k, delta, cap);
      else
        v = enumerate_only ? bound_sphere_enumerated(amb, k, delta, cap) : bound_sphere(amb, k, delta, cap);
      print_bound(g, v);
    });
  }
  std::string exponents_text;
  auto* chain = bound->add_subcommand("chain", "Chain-ring bound for delta = k");
  chain->add_option("--ring", ring_text)->required();
  chain->add_option("--n", n)->required();
  chain->add_option("--k", k)->required();
  chain->add_option("--exponents", exponents_text, "a_2 ... a_n of the ambient columns");
  chain->callback([&] {
    std::vector<unsigned> ex;
    for (const auto& tok : split_literals(exponents_text)) ex.push_back(static_cast<unsigned>(parse_unsigned(tok)));
    const auto v = bound_chain_ring(*Ring::parse(ring_text), n, ex, k);
    print_bound(g, {"chain", v, BoundMethod::closed_form, "minimal admissible m"});
  });
  std::uint64_t p = 0;
  unsigned m = 0;
  auto* zpm = bound->add_subcommand("zpm", "Bounds for (Z_p)^m");
  zpm->add_option("--p", p)->required();
  zpm->add_option("--m", m)->required();
  zpm->add_option("--n", n)->required();
  zpm->add_option("--k", k)->required();
  zpm->add_option("--delta", delta)->required();
  zpm->callback([&] {
    const auto b = bound_zpm(p, m, static_cast<unsigned>(n), k, delta);
    const std::pair<const char*, std::optional<std::uint64_t>> rows[] = {
        {"bb1", b.bb1}, {"bb2", b.bb2}, {"bb3", b.bb3}, {"bb4", b.bb4}};
    if (g.fmt() == Format::machine) {
      json out = {{"best", b.best}};
      for (const auto& [name, v] : rows) out[name] = v ? json(*v) : json(nullptr);
      emit(out);
      return;
    }
    for (const auto& [name, v] : rows) std::cout << name << " " << (v ? std::to_string(*v) : "n/a") << "\n";
    std::cout << "best " << b.best << "\n";
  });

  auto* dec = app.add_subcommand("decode", "Minimum-distance decoding");
  dec->add_option("code", file_a)->required();
  dec->add_option("received", file_b)->required();
  bool by_factor = false;
  dec->add_flag("--by-factor", by_factor, "Decode each factor of a product ring separately");
  dec->callback([&] {
    const auto cf = load_code_file(file_a);
    const Code c = Code::from_words(cf.words);
    const SubModule recv = load_module(file_b);
    if (!by_factor) {
      const auto d = decode_min_distance(c, recv);
      if (g.fmt() == Format::machine) {
        json out = decode_json(d);
        if (d.word) out["word"] = module_json(*d.word);
        emit(out);
        return;
      }
      std::cout << decode_line(d) << "\n";
      if (d.word) std::cout << format_module(*d.word);
      return;
    }
    const RingPtr& r = c.ambient().ring;
    if (r->kind() != Ring::Kind::product) throw DomainError("decode --by-factor: " + r->name() + " is not a product");
    std::vector<Code> factors;
    for (std::size_t i = 0; i < r->factors().size(); ++i) {
      std::vector<SubModule> parts;
      for (const auto& w : c.words()) parts.push_back(project_factor(w, i));
      factors.push_back(Code::from_words(parts));
    }
    const ProductCode pc{r, factors, c, true};
    const auto res = decode_product(pc, recv);
    if (g.fmt() == Format::machine) {
      json comps = json::array();
      for (const auto& d : res.components) comps.push_back(decode_json(d));
      emit({{"overall", decode_json(res.overall)}, {"components", comps}});
      return;
    }
    std::cout << "overall " << decode_line(res.overall) << "\n";
    for (std::size_t i = 0; i < res.components.size(); ++i)
      std::cout << "factor " << i + 1 << " " << decode_line(res.components[i]) << "\n";
  });

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo run of Y = AX + Z");
  sim->add_option("config", file_a)->required();
  sim->callback([&] {
    const Config cfg = load(file_a, Config::parse);
    const ChannelConfig c = channel_from(cfg, std::filesystem::path(file_a).parent_path(), g);
    const auto s = run_trials(c);
    if (g.fmt() == Format::machine) {
      json out = {{"ring", c.ring->name()},
                  {"codewords", c.code->size()},
                  {"min_distance", c.code->min_distance()},
                  {"seed", c.seed},
                  {"trials", s.trials},
                  {"successes", s.successes},
                  {"certified_successes", s.certified_successes},
                  {"within_radius", s.within_radius},
                  {"radius_violations", s.radius_violations},
                  {"success_rate", s.success_rate},
                  {"certified_rate", s.certified_rate},
                  {"mean_rho", s.mean_rho},
                  {"mean_e", s.mean_e}};
      if (g.verbose) {
        json trials = json::array();
        for (const auto& r : s.reports)
          trials.push_back({{"trial", r.trial},
                            {"sent", r.sent},
                            {"rho", r.rho},
                            {"e", r.e},
                            {"status", to_string(r.status)},
                            {"decoded", r.decoded ? json(*r.decoded) : json(nullptr)},
                            {"success", r.success},
                            {"certified", r.certified}});
        out["reports"] = trials;
      }
      emit(out);
      return;
    }
    if (g.verbose)
      for (const auto& r : s.reports)
        std::cout << "trial " << r.trial << " sent " << r.sent << " rho " << r.rho << " e " << r.e << " "
                  << to_string(r.status) << (r.success ? " ok" : " fail") << "\n";
    std::ostringstream t;
    t << "ring            " << c.ring->name() << "\n"
      << "codewords       " << c.code->size() << "\n"
      << "min distance    " << c.code->min_distance() << "\n"
      << "seed            " << c.seed << "\n"
      << "trials          " << s.trials << "\n"
      << "success rate    " << s.success_rate << "\n"
      << "certified rate  " << s.certified_rate << "\n"
      << "within radius   " << s.within_radius << "\n"
      << "radius failures " << s.radius_violations << "\n"
      << "mean rho        " << s.mean_rho << "\n"
      << "mean e          " << s.mean_e << "\n";
    std::cout << t.str();
  });

  TrappingParams tp;
  std::size_t instances = 1;
  auto* trap = app.add_subcommand("check-trapping", "Compare error trapping with minimum-distance decoding");
  trap->add_option("--ring", ring_text)->required();
  trap->add_option("--n", tp.n)->required();
  trap->add_option("--N", tp.N)->required();
  trap->add_option("--t", tp.t)->required();
  trap->add_option("--u", tp.u)->required();
  trap->add_option("--v", tp.v)->required();
  trap->add_option("--instances", instances, "Draws per codeword");
  bool exhaustive = false;
  trap->add_flag("--exhaustive", exhaustive, "Every free H and every K for each codeword");
  trap->callback([&] {
    const RingPtr r = Ring::parse(ring_text);
    const auto rep = exhaustive ? check_trapping_exhaustive(r, tp, g.seed)
                                : check_trapping_is_min_distance(r, tp, instances, g.seed);
    if (g.fmt() == Format::machine) {
      emit({{"codewords", rep.codewords},
            {"instances", rep.instances},
            {"comparisons", rep.comparisons},
            {"violations", rep.violations},
            {"details", rep.details}});
      return;
    }
    std::cout << "codewords " << rep.codewords << "\ninstances " << rep.instances << "\ncomparisons "
              << rep.comparisons << "\nviolations " << rep.violations << "\n";
    for (const auto& d : rep.details) std::cout << "  " << d << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
