// casa: a workbench for cellular automata over finite algebraic structures.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 resource cap exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "casa/endo.hpp"
#include "casa/error.hpp"
#include "casa/presets.hpp"

namespace {

using namespace casa;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Accepts a built-in alphabet name or a path to an algebra file.
FiniteAlgebra resolve_algebra(const std::string& name_or_path) {
  if (auto builtin = presets::builtin_algebra(name_or_path)) return *builtin;
  if (std::filesystem::exists(name_or_path)) return load_algebra(read_file(name_or_path));
  throw ParseError("unknown alphabet '" + name_or_path + "' (not a builtin, not a file)");
}

Group resolve_group(const std::string& name_or_path) {
  if (name_or_path == "Z") return Group::z();
  if (name_or_path == "Z2") return Group::z2();
  if (std::filesystem::exists(name_or_path)) return load_group(read_file(name_or_path));
  throw ParseError("unknown group '" + name_or_path + "' (expected Z, Z2, or a file)");
}

MemorySet parse_memory(const Group& g, const std::string& text) {
  std::istringstream in(text);
  std::vector<GroupElem> elems;
  std::string tok;
  while (in >> tok) elems.push_back(parse_elem(g, tok));
  return MemorySet(g, std::move(elems));
}

CellularAutomaton load_ca_file(const std::string& path,
                               const std::vector<std::string>& group_files,
                               const std::vector<std::string>& alphabet_files) {
  std::vector<Group> groups;
  for (const auto& f : group_files) groups.push_back(load_group(read_file(f)));
  std::vector<FiniteAlgebra> alphabets = presets::builtin_algebras();
  for (const auto& f : alphabet_files) alphabets.push_back(load_algebra(read_file(f)));
  return load_ca(read_file(path), groups, alphabets);
}

int print_report(const Report& report) {
  std::cout << report.to_string();
  return report.all_pass() ? 0 : 1;
}

struct VerifySuites {
  std::size_t cap = limits::kDomainCap;
  std::size_t config_cap = limits::kConfigCap;
  std::size_t samples = 100;

  Report th_local() const {
    return verify_th_local(presets::cyclic_group(4), presets::cyclic(2),
                           MemorySet(presets::cyclic_group(4), {elem(0), elem(1)}),
                           config_cap);
  }
  Report th_ca_s() const {
    auto g = presets::cyclic_group(4);
    return verify_phi(g, MemorySet(g, {elem(0), elem(1)}), presets::cyclic(2), cap,
                      samples);
  }
  Report group_algebra() const {
    auto g = presets::cyclic_group(6);
    return verify_group_algebra(g, presets::cyclic(2), MemorySet::canonical(g, g.elements()),
                                cap, 64 * 64, samples);
  }
  Report boolean_count() const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs{
        {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}};
    return verify_boolean_counts(4, pairs, cap);
  }
  Report direct_limit() const {
    auto z = Group::z();
    std::vector<MemorySet> chain{MemorySet(z, {elem(0)}),
                                 MemorySet(z, {elem(0), elem(1)}),
                                 MemorySet(z, {elem(-1), elem(0), elem(1)})};
    return verify_direct_limit(z, chain, presets::cyclic(2), cap);
  }
  Report g_algebra() const {
    Report report = verify_g_algebra(presets::cyclic_group(4), presets::cyclic(2),
                                     config_cap);
    for (const auto& g : {presets::cyclic_group(4), presets::symmetric3()})
      for (const auto& a : {presets::cyclic(2), presets::cyclic(3)})
        report.merge(verify_equivariance(g, a, 50, config_cap));
    return report;
  }

  Report run(const std::string& suite) const {
    if (suite == "th-local") return th_local();
    if (suite == "th-ca-s") return th_ca_s();
    if (suite == "group-algebra") return group_algebra();
    if (suite == "boolean-count") return boolean_count();
    if (suite == "direct-limit") return direct_limit();
    if (suite == "g-algebra") return g_algebra();
    if (suite == "all") {
      Report all;
      for (const char* s :
           {"th-local", "th-ca-s", "group-algebra", "boolean-count", "direct-limit",
            "g-algebra"})
        all.merge(run(s));
      return all;
    }
    throw CLI::ValidationError("verify", "unknown suite '" + suite + "'");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cellular automata over finite algebraic structures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::size_t cap = limits::kDomainCap;
  std::size_t config_cap = limits::kConfigCap;
  app.add_option("--cap", cap, "hom-search domain cap")->capture_default_str();
  app.add_option("--config-cap", config_cap, "exhaustive configuration-space cap")
      ->capture_default_str();

  int exit_code = 0;

  // group check FILE
  auto* group_cmd = app.add_subcommand("group", "group file operations");
  group_cmd->require_subcommand(1);
  std::string group_path;
  auto* group_check = group_cmd->add_subcommand("check", "validate a group file");
  group_check->add_option("file", group_path, "group file")->required();
  group_check->callback([&] {
    auto g = load_group(read_file(group_path));
    std::cout << "group " << g.name() << ": valid, order " << g.order() << "\n";
  });

  // algebra check FILE [--entropic]
  auto* algebra_cmd = app.add_subcommand("algebra", "algebra file operations");
  algebra_cmd->require_subcommand(1);
  std::string algebra_path;
  bool want_entropic = false;
  auto* algebra_check = algebra_cmd->add_subcommand("check", "validate an algebra file");
  algebra_check->add_option("file", algebra_path, "algebra file")->required();
  algebra_check->add_flag("--entropic", want_entropic, "also decide entropicity");
  algebra_check->callback([&] {
    auto a = load_algebra(read_file(algebra_path));
    std::cout << "algebra " << a.name() << ": valid, size " << a.size() << ", "
              << a.signature().size() << " ops\n";
    if (want_entropic) {
      auto result = is_entropic(a);
      if (result.entropic) {
        std::cout << "entropic: true\n";
      } else {
        std::cout << "entropic: false\n";
        std::cout << "witness: " << result.witness->describe(a) << "\n";
      }
    }
  });

  // hom count|list DOM COD [--power K]
  auto* hom_cmd = app.add_subcommand("hom", "homomorphism enumeration");
  hom_cmd->require_subcommand(1);
  std::string hom_dom, hom_cod;
  std::size_t hom_power = 1;
  auto add_hom_sub = [&](const char* name, const char* desc) {
    auto* sub = hom_cmd->add_subcommand(name, desc);
    sub->add_option("dom", hom_dom, "domain algebra (builtin name or file)")->required();
    sub->add_option("cod", hom_cod, "codomain algebra (builtin name or file)")->required();
    sub->add_option("--power", hom_power, "raise the domain to this power")
        ->capture_default_str();
    return sub;
  };
  add_hom_sub("count", "print |Hom(dom, cod)|")->callback([&] {
    auto dom = resolve_algebra(hom_dom);
    auto cod = resolve_algebra(hom_cod);
    if (hom_power != 1) dom = power_algebra(dom, hom_power, cap);
    std::optional<std::size_t> hint;
    if (hom_power != 1) hint = hom_power;
    std::cout << count_homs(dom, cod, hint, cap) << "\n";
  });
  add_hom_sub("list", "print one hom per line as its value table")->callback([&] {
    auto dom = resolve_algebra(hom_dom);
    auto cod = resolve_algebra(hom_cod);
    if (hom_power != 1) dom = power_algebra(dom, hom_power, cap);
    for (const auto& h : enumerate_homs(dom, cod, cap).items) {
      for (std::size_t i = 0; i < h.table.size(); ++i)
        std::cout << (i ? " " : "") << h.table[i];
      std::cout << "\n";
    }
  });

  // ca apply|compose|is-endo|minimize
  auto* ca_cmd = app.add_subcommand("ca", "cellular automaton operations");
  ca_cmd->require_subcommand(1);
  std::string ca_path, ca_path2, ca_init;
  std::size_t ca_steps = 1;
  std::vector<std::string> ca_group_files, ca_alphabet_files;
  auto add_ca_sub = [&](const char* name, const char* desc, bool two_files) {
    auto* sub = ca_cmd->add_subcommand(name, desc);
    sub->add_option("ca-file", ca_path, "CA file")->required();
    if (two_files) sub->add_option("ca-file2", ca_path2, "second CA file")->required();
    sub->add_option("--group-file", ca_group_files, "group file for named groups");
    sub->add_option("--alphabet-file", ca_alphabet_files,
                    "algebra file for named alphabets");
    return sub;
  };
  auto* ca_apply = add_ca_sub("apply", "evolve a configuration", false);
  ca_apply->add_option("--init", ca_init, "initial configuration digits")->required();
  ca_apply->add_option("--steps", ca_steps, "number of steps")->capture_default_str();
  ca_apply->callback([&] {
    auto ca = load_ca_file(ca_path, ca_group_files, ca_alphabet_files);
    auto x = parse_configuration(ca.group(), ca.alphabet().size(), ca_init);
    std::cout << format_configuration(x) << "\n";
    for (std::size_t t = 0; t < ca_steps; ++t) {
      x = apply(ca, x);
      std::cout << format_configuration(x) << "\n";
    }
  });
  add_ca_sub("compose", "compose two automata (first after second)", true)
      ->callback([&] {
        auto outer = load_ca_file(ca_path, ca_group_files, ca_alphabet_files);
        auto inner = load_ca_file(ca_path2, ca_group_files, ca_alphabet_files);
        std::cout << format_ca(compose(outer, inner, cap));
      });
  add_ca_sub("is-endo", "decide the endomorphism property", false)->callback([&] {
    auto ca = load_ca_file(ca_path, ca_group_files, ca_alphabet_files);
    std::cout << "endomorphic: " << (is_endomorphic(ca, cap) ? "true" : "false") << "\n";
  });
  add_ca_sub("minimize", "drop inessential memory positions", false)->callback([&] {
    auto ca = load_ca_file(ca_path, ca_group_files, ca_alphabet_files);
    std::cout << format_ca(minimal_memory(ca));
  });

  // endoca count|list
  auto* endoca_cmd = app.add_subcommand("endoca", "endomorphic CA families");
  endoca_cmd->require_subcommand(1);
  std::string endoca_group, endoca_memory, endoca_alphabet;
  auto add_endoca_sub = [&](const char* name, const char* desc) {
    auto* sub = endoca_cmd->add_subcommand(name, desc);
    sub->add_option("--group", endoca_group, "Z, Z2, or a group file")->required();
    sub->add_option("--memory", endoca_memory, "memory set, space-separated elements")
        ->required();
    sub->add_option("--alphabet", endoca_alphabet, "builtin name or algebra file")
        ->required();
    return sub;
  };
  add_endoca_sub("count", "count endomorphic CA with the given memory set")
      ->callback([&] {
        auto g = resolve_group(endoca_group);
        auto a = resolve_algebra(endoca_alphabet);
        auto result = count_endoca(g, parse_memory(g, endoca_memory), a, cap);
        std::cout << result.count << " (" << result.method << ")\n";
      });
  add_endoca_sub("list", "list local rule tables of the endomorphic CA")
      ->callback([&] {
        auto g = resolve_group(endoca_group);
        auto a = resolve_algebra(endoca_alphabet);
        auto family = enumerate_endoca(g, parse_memory(g, endoca_memory), a, cap);
        for (const auto& item : family.items) {
          for (std::size_t i = 0; i < item.rule.table.size(); ++i)
            std::cout << (i ? " " : "") << item.rule.table[i];
          std::cout << "\n";
        }
      });

  // eca classify|run
  auto* eca_cmd = app.add_subcommand("eca", "elementary cellular automata");
  eca_cmd->require_subcommand(1);
  std::string eca_predicate;
  auto* eca_classify = eca_cmd->add_subcommand("classify", "scan all 256 rules");
  eca_classify
      ->add_option("--predicate", eca_predicate,
                   "additive | boolean-hom | all | endomorphic-under:<alphabet>")
      ->required();
  eca_classify->callback([&] {
    std::vector<int> rules;
    if (eca_predicate == "additive") {
      rules = classify_eca(EcaPredicate::additive);
    } else if (eca_predicate == "boolean-hom") {
      rules = classify_eca(EcaPredicate::boolean_hom);
    } else if (eca_predicate == "all") {
      rules = classify_eca(EcaPredicate::all);
    } else if (eca_predicate.starts_with("endomorphic-under:")) {
      auto alpha = resolve_algebra(eca_predicate.substr(18));
      rules = classify_eca(EcaPredicate::endomorphic_under, &alpha);
    } else {
      throw CLI::ValidationError("--predicate", "unknown predicate '" + eca_predicate + "'");
    }
    for (std::size_t i = 0; i < rules.size(); ++i)
      std::cout << (i ? "," : "") << rules[i];
    std::cout << "\n";
  });
  int eca_rule = 0;
  std::string eca_init;
  std::size_t eca_steps = 1;
  std::size_t eca_period = 0;
  auto* eca_run = eca_cmd->add_subcommand("run", "evolve a periodic configuration");
  eca_run->add_option("rule", eca_rule, "Wolfram rule number 0..255")->required();
  eca_run->add_option("--init", eca_init, "initial bits, one period")->required();
  eca_run->add_option("--steps", eca_steps, "number of steps")->capture_default_str();
  eca_run->add_option("--period", eca_period,
                      "period length (must match --init when given)");
  eca_run->callback([&] {
    if (eca_period != 0 && eca_period != eca_init.size())
      throw ParseError("eca run: --period does not match the --init length");
    auto ca = eca(eca_rule, presets::cyclic(2));
    auto x = parse_configuration(Group::z(), 2, eca_init);
    std::cout << format_configuration(x) << "\n";
    for (std::size_t t = 0; t < eca_steps; ++t) {
      x = apply(ca, x);
      std::cout << format_configuration(x) << "\n";
    }
  });

  // verify SUITE
  std::string suite;
  std::size_t verify_samples = 100;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd
      ->add_option("suite", suite,
                   "th-local | th-ca-s | group-algebra | boolean-count | direct-limit | "
                   "g-algebra | all")
      ->required();
  verify_cmd->add_option("--samples", verify_samples, "sample count for sampled modes")
      ->capture_default_str();
  verify_cmd->callback([&] {
    VerifySuites suites{cap, config_cap, verify_samples};
    exit_code = print_report(suites.run(suite));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
