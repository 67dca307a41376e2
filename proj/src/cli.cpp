#include "modlie/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "modlie/algebra.hpp"
#include "modlie/cartan.hpp"
#include "modlie/reflections.hpp"
#include "modlie/relations.hpp"

namespace modlie::cli {

namespace {

enum class Format { Text, Json, Dot, Ascii };

struct RunConfig {
  std::optional<int> registry_id;
  std::optional<std::string> file;
  std::optional<std::uint32_t> prime;
  std::string format = "text";
  bool json = false;
  std::size_t max_height = kDefaultMaxHeight;

  Format output() const {
    if (json) return Format::Json;
    if (format == "json") return Format::Json;
    if (format == "dot") return Format::Dot;
    if (format == "ascii") return Format::Ascii;
    return Format::Text;
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

void add_source_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-m,--matrix", cfg.registry_id, "registry Cartan matrix 1..7");
  cmd->add_option("-f,--file", cfg.file, "Cartan matrix JSON file");
  cmd->add_option("--p", cfg.prime, "prime override (file source only)");
  cmd->add_option("--max-height", cfg.max_height, "height cap for the build")
      ->capture_default_str();
}

void add_format_option(CLI::App* cmd, RunConfig& cfg,
                       std::vector<std::string> formats) {
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_flag("--json", cfg.json, "shorthand for --format json");
}

CartanSpec load_spec(const RunConfig& cfg, bool required = true,
                     int default_id = 1) {
  if (cfg.registry_id && cfg.file) {
    throw UsageError("give either -m or -f, not both");
  }
  if (cfg.prime && !cfg.file) {
    throw UsageError("--p is only valid together with -f");
  }
  if (cfg.file) {
    std::ifstream in(*cfg.file);
    if (!in) throw UsageError("cannot open " + *cfg.file);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidCartan(*cfg.file + ": " + e.what());
    }
    if (cfg.prime) doc["p"] = *cfg.prime;
    return cartan_from_json(doc);
  }
  if (cfg.registry_id) return registry(*cfg.registry_id);
  if (required) throw UsageError("a matrix source (-m or -f) is required");
  return registry(default_id);
}

std::string weight_text(const std::vector<int>& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ')';
  return os.str();
}

std::string residues_text(const std::vector<Residue>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

void print_residue_matrix(std::ostream& out, const FpMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << ' ';
    for (std::size_t c = 0; c < m.cols(); ++c) out << ' ' << m(r, c);
    out << '\n';
  }
}

std::string witness_text(const EquivalenceWitness& w) {
  std::ostringstream os;
  os << "permutation (";
  for (std::size_t i = 0; i < w.permutation.size(); ++i) {
    os << (i ? "," : "") << w.permutation[i] + 1;
  }
  os << ") row scaling (";
  for (std::size_t i = 0; i < w.row_scale.size(); ++i) {
    os << (i ? "," : "") << w.row_scale[i];
  }
  os << ')';
  return os.str();
}

nlohmann::ordered_json witness_json(const EquivalenceWitness& w) {
  nlohmann::ordered_json j;
  std::vector<std::size_t> perm;
  for (auto k : w.permutation) perm.push_back(k + 1);
  j["permutation"] = perm;
  j["row_scale"] = w.row_scale;
  return j;
}

// Registry id of a matrix's class, if it has one.
std::optional<std::pair<int, EquivalenceWitness>> registry_match(
    const CartanSpec& s) {
  if (s.prime() != 5 || s.size() != 5) return std::nullopt;
  for (int id = 1; id <= kRegistrySize; ++id) {
    if (auto w = equivalent(s, registry(id))) return std::make_pair(id, *w);
  }
  return std::nullopt;
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::pair<int, CartanSpec>> entries;
  if (cfg.registry_id) {
    entries.emplace_back(*cfg.registry_id, registry(*cfg.registry_id));
  } else {
    for (int id = 1; id <= kRegistrySize; ++id) entries.emplace_back(id, registry(id));
  }
  if (cfg.output() == Format::Json) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& [id, s] : entries) {
      auto j = to_json(s);
      j["id"] = id;
      doc.push_back(j);
    }
    out << doc.dump(2) << '\n';
    return kOk;
  }
  for (const auto& [id, s] : entries) {
    out << id << ")  diagonal (";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << (i ? "," : "") << PrimeField(s.prime()).signed_lift(s(i, i));
    }
    out << ")  parity (";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << (i ? "," : "") << to_string(s.parity(i));
    }
    out << ")\n" << s;
  }
  return kOk;
}

int cmd_build(const RunConfig& cfg, bool list_roots, std::ostream& out) {
  const auto spec = load_spec(cfg);
  const auto model = AlgebraModel::build(spec, cfg.max_height);
  if (cfg.output() == Format::Json) {
    out << to_json(model).dump(2) << '\n';
    return kOk;
  }
  const auto roots = positive_roots(model);
  std::size_t even = 0;
  for (const auto& r : roots) even += r.parity == Parity::Even ? 1 : 0;
  out << "sdim " << superdimension(model) << '\n';
  out << "positive roots " << roots.size() << " (even " << even << ", odd "
      << roots.size() - even << ")\n";
  try {
    const auto top = maximal_root(model);
    out << "maximal root " << weight_text(top.weight) << " height "
        << top.height() << " weight " << residues_text(top.cartan_eigenvalues.residues())
        << '\n';
  } catch (const NoUniqueMaximum& e) {
    out << "maximal root: " << e.what() << '\n';
  }
  if (list_roots) {
    for (const auto& r : roots) {
      out << "  " << std::setw(3) << r.height() << "  " << weight_text(r.weight)
          << "  " << to_string(r.parity) << "  mult " << r.multiplicity
          << "  weight " << residues_text(r.cartan_eigenvalues.residues()) << '\n';
    }
  }
  return kOk;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_spec(cfg);
  const auto inv = invert_mod_p(spec);
  if (cfg.output() == Format::Json) {
    nlohmann::ordered_json doc;
    doc["p"] = spec.prime();
    doc["inverse"] = inv.residue_rows();
    out << doc.dump(2) << '\n';
    return kOk;
  }
  print_residue_matrix(out, inv);
  return kOk;
}

int cmd_reflect(const RunConfig& cfg, std::size_t root, std::ostream& out) {
  const auto spec = load_spec(cfg);
  if (root < 1 || root > spec.size()) {
    throw UsageError("-i must lie in 1.." + std::to_string(spec.size()));
  }
  const auto reflected = odd_reflect(spec, root - 1, cfg.max_height);
  const auto match = registry_match(reflected);
  if (cfg.output() == Format::Json) {
    nlohmann::ordered_json doc;
    doc["root"] = root;
    doc["reflected"] = to_json(reflected);
    doc["canonical"] = to_json(canonical_form(reflected));
    if (match) {
      doc["class"] = match->first;
      doc["witness"] = witness_json(match->second);
    } else {
      doc["class"] = nullptr;
    }
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "reflection in root " << root << ":\n" << reflected;
  if (match) {
    out << "class " << match->first << " (" << witness_text(match->second)
        << ")\n";
  }
  return kOk;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_spec(cfg, false);
  const auto g = orbit(spec, cfg.max_height);
  switch (cfg.output()) {
    case Format::Dot:
      out << to_dot(g);
      return kOk;
    case Format::Json: {
      nlohmann::ordered_json doc;
      auto nodes = nlohmann::ordered_json::array();
      for (const auto& node : g.nodes) {
        auto j = to_json(node.representative);
        if (auto m = registry_match(node.representative)) {
          j["class"] = m->first;
        }
        nodes.push_back(j);
      }
      doc["nodes"] = nodes;
      auto edges = nlohmann::ordered_json::array();
      for (const auto& e : g.edges) {
        edges.push_back({{"from", e.from + 1}, {"root", e.root + 1}, {"to", e.to + 1}});
      }
      doc["edges"] = edges;
      out << doc.dump(2) << '\n';
      return kOk;
    }
    default:
      break;
  }
  out << g.nodes.size() << " equivalence classes\n";
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    out << "node " << k + 1;
    if (auto m = registry_match(g.nodes[k].representative)) {
      out << " = registry " << m->first;
    }
    out << ":\n" << g.nodes[k].representative;
  }
  for (const auto& e : g.edges) {
    out << "  " << e.from + 1 << " --[" << e.root + 1 << "]--> " << e.to + 1 << '\n';
  }
  return kOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_spec(cfg, false);
  const auto g = orbit(spec, cfg.max_height);
  std::vector<CartanSpec> numbering;
  if (spec.prime() == 5 && spec.size() == 5 && registry_match(spec)) {
    numbering = registry_all();
  }
  const auto t = reflection_table(g, numbering);
  if (cfg.output() == Format::Json) {
    out << to_json(t).dump(2) << '\n';
  } else {
    out << to_text(t);
  }
  return kOk;
}

RelationSet load_relations(const std::string& source, const CartanSpec& spec) {
  if (source == "serre") return serre_relations(spec);
  if (source.rfind("paper:", 0) == 0) {
    int id = 0;
    try {
      id = std::stoi(source.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad relation source " + source);
    }
    return paper_relations(id);
  }
  if (source.rfind("file:", 0) == 0) {
    const std::string path = source.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_relation_file(buf.str(), source);
  }
  throw UsageError("relation source must be paper:k, serre or file:path");
}

int cmd_verify(const RunConfig& cfg, const std::string& source,
               std::ostream& out) {
  const auto spec = load_spec(cfg);
  const auto relations = load_relations(source, spec);
  for (const auto& r : relations.relations) {
    if (r.expr.max_index() > spec.size()) {
      throw IndexOutOfRange(r.label + ": generator x" +
                            std::to_string(r.expr.max_index()) +
                            " out of range for rank " +
                            std::to_string(spec.size()));
    }
  }
  const auto model = AlgebraModel::build(spec, cfg.max_height);
  const auto report = verify(model, relations);
  if (cfg.output() == Format::Json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
      const auto& e = report.entries[k];
      out << e.label << "  " << to_string(relations.relations[k].expr) << '\n';
      if (e.error) {
        out << "    error: " << *e.error << '\n';
        continue;
      }
      out << "    weight " << weight_text(e.weight) << " height " << e.height
          << (e.zero ? "  zero" : "  NONZERO");
      if (e.residual) out << " residual " << residues_text(*e.residual);
      out << '\n';
    }
    out << (report.all_zero() ? "all relations hold\n"
                              : "some relations do not hold\n");
  }
  return report.all_zero() ? kOk : kNonzeroResidual;
}

int cmd_render(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_spec(cfg);
  const auto g = to_dynkin(spec);
  switch (cfg.output()) {
    case Format::Dot:
      out << to_dot(g);
      break;
    case Format::Json: {
      nlohmann::ordered_json doc;
      auto nodes = nlohmann::ordered_json::array();
      for (const auto& node : g.nodes) {
        nodes.push_back({{"index", node.index},
                         {"kind", node.kind == NodeKind::IsotropicGrey ? "isotropic-grey"
                                                                       : "even-white"}});
      }
      auto edges = nlohmann::ordered_json::array();
      for (const auto& e : g.edges) {
        edges.push_back({{"i", e.i},
                         {"j", e.j},
                         {"a_ij", e.a_ij},
                         {"a_ji", e.a_ji},
                         {"style", e.style == EdgeStyle::Dotted ? "dotted" : "plain"}});
      }
      doc["nodes"] = nodes;
      doc["edges"] = edges;
      out << doc.dump(2) << '\n';
      break;
    }
    default:
      out << to_ascii(g);
  }
  return kOk;
}

int cmd_discover(const RunConfig& cfg, std::size_t up_to, std::ostream& out) {
  const auto spec = load_spec(cfg);
  const auto model = AlgebraModel::build(spec, cfg.max_height);
  const auto d = discover(model, up_to);
  if (cfg.output() == Format::Json) {
    nlohmann::ordered_json doc;
    auto stats = nlohmann::ordered_json::array();
    for (const auto& s : d.stats()) {
      if (s.new_dim == 0 && s.model_dim == s.free_dim) continue;
      stats.push_back({{"weight", s.weight},
                       {"free", s.free_dim},
                       {"model", s.model_dim},
                       {"ideal", s.ideal_dim},
                       {"new", s.new_dim}});
    }
    doc["stats"] = stats;
    auto rels = nlohmann::ordered_json::array();
    for (const auto& r : d.relations().relations) {
      rels.push_back({{"label", r.label}, {"relation", to_string(r.expr)}});
    }
    doc["relations"] = rels;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  for (const auto& r : d.relations().relations) {
    out << r.label << ": " << to_string(r.expr) << '\n';
  }
  out << d.relations().relations.size() << " relations up to height " << up_to
      << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cartan matrices, odd reflections and relations of modular "
               "Lie superalgebras"};
  app.name(args.empty() ? "el" : args.front());
  bool dump_registry = false;
  app.add_flag("--dump-registry", dump_registry,
               "print the built-in Cartan matrices as JSON");

  RunConfig cfg;
  std::size_t root = 0;
  std::string relations = "serre";
  bool list_roots = false;
  std::size_t discover_height = 4;

  auto* list = app.add_subcommand("list", "list the registry matrices");
  list->add_option("-m,--matrix", cfg.registry_id, "show one matrix only");
  add_format_option(list, cfg, {"text", "json"});

  auto* build = app.add_subcommand("build", "build g(A) and report its roots");
  add_source_options(build, cfg);
  add_format_option(build, cfg, {"text", "json"});
  build->add_flag("--roots", list_roots, "list every positive root");

  auto* inv = app.add_subcommand("invert", "inverse of the Cartan matrix mod p");
  add_source_options(inv, cfg);
  add_format_option(inv, cfg, {"text", "json"});

  auto* reflect = app.add_subcommand("reflect", "odd reflection in one root");
  add_source_options(reflect, cfg);
  add_format_option(reflect, cfg, {"text", "json"});
  reflect->add_option("-i,--index", root, "1-based root index")->required();

  auto* orb = app.add_subcommand("orbit", "odd-reflection orbit");
  add_source_options(orb, cfg);
  add_format_option(orb, cfg, {"text", "json", "dot"});

  auto* table = app.add_subcommand("table", "reflection table of the orbit");
  add_source_options(table, cfg);
  add_format_option(table, cfg, {"text", "json"});

  auto* ver = app.add_subcommand("verify", "evaluate relations in g(A)");
  add_source_options(ver, cfg);
  add_format_option(ver, cfg, {"text", "json"});
  ver->add_option("--relations", relations, "paper:k | serre | file:path")
      ->capture_default_str();

  auto* render = app.add_subcommand("render", "Dynkin diagram");
  add_source_options(render, cfg);
  add_format_option(render, cfg, {"ascii", "dot", "json"});

  auto* disc = app.add_subcommand("discover", "find defining relations");
  add_source_options(disc, cfg);
  add_format_option(disc, cfg, {"text", "json"});
  disc->add_option("--height", discover_height, "maximal relation height")
      ->capture_default_str();

  app.require_subcommand(0, 1);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (dump_registry) {
      auto doc = nlohmann::ordered_json::array();
      for (const auto& s : registry_all()) doc.push_back(to_json(s));
      out << doc.dump(2) << '\n';
      return kOk;
    }
    if (*list) return cmd_list(cfg, out);
    if (*build) return cmd_build(cfg, list_roots, out);
    if (*inv) return cmd_invert(cfg, out);
    if (*reflect) return cmd_reflect(cfg, root, out);
    if (*orb) return cmd_orbit(cfg, out);
    if (*table) return cmd_table(cfg, out);
    if (*ver) return cmd_verify(cfg, relations, out);
    if (*render) return cmd_render(cfg, out);
    if (*disc) return cmd_discover(cfg, discover_height, out);
    out << app.help();
    return kUsage;
  } catch (const NotIsotropic& e) {
    err << "error: NotIsotropic: " << e.what() << '\n';
    return kNotIsotropic;
  } catch (const SingularCartanMatrix& e) {
    err << "error: SingularCartanMatrix: " << e.what() << '\n';
    return kBuildFailure;
  } catch (const NonTerminated& e) {
    err << "error: NonTerminated: " << e.what() << '\n';
    return kBuildFailure;
  } catch (const UnknownId& e) {
    err << "error: UnknownId: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace modlie::cli
