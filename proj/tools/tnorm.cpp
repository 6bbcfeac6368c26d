// tnorm: certified two-sided brackets for tensor norms on M_m(M_a (x) M_b)
// and l_n^inf (x) M_n. Subcommands: table, norm, bracket, check.
// Exit codes: 0 success, 1 invariant or soundness violation, 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tnorms/report.hpp"
#include "tnorms/suites.hpp"

using namespace tnorms;

namespace {

struct ElementChoice {
  std::optional<int> table_id;
  int n = 2;
  std::string element_path;
  std::string random_spec;

  int sources() const {
    return (table_id ? 1 : 0) + (element_path.empty() ? 0 : 1) +
           (random_spec.empty() ? 0 : 1);
  }
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

TensorElement parse_random_spec(const std::string& spec, std::uint64_t seed,
                                std::string& label) {
  int m = 1, a = 2, b = 2, rank = 2;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("random spec entries look like key=value");
    const std::string key = item.substr(0, eq);
    const int val = std::stoi(item.substr(eq + 1));
    if (key == "m")
      m = val;
    else if (key == "a")
      a = val;
    else if (key == "b")
      b = val;
    else if (key == "rank")
      rank = val;
    else
      throw std::invalid_argument("unknown random spec key '" + key + "'");
  }
  label = "random:m=" + std::to_string(m) + ",a=" + std::to_string(a) +
          ",b=" + std::to_string(b) + ",rank=" + std::to_string(rank) +
          ",seed=" + std::to_string(seed);
  return TensorElement::random(m, a, b, rank, seed);
}

TensorElement load_element(const ElementChoice& ch, std::uint64_t seed,
                           std::string& label) {
  if (ch.sources() != 1)
    throw std::invalid_argument(
        "exactly one of --table-id, --element, --random is required");
  if (ch.table_id) {
    label = "table:" + std::to_string(*ch.table_id);
    return make_table_element(*ch.table_id, ch.n);
  }
  if (!ch.element_path.empty()) {
    std::ifstream in(ch.element_path);
    if (!in)
      throw std::invalid_argument("cannot open element file: " +
                                  ch.element_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument(std::string("element JSON parse error: ") +
                                  e.what());
    }
    label = "file:" + ch.element_path;
    return TensorElement::from_json(j);
  }
  return parse_random_spec(ch.random_spec, seed, label);
}

std::vector<NormKind> parse_norms(const std::string& csv) {
  std::vector<NormKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto k = parse_norm_kind(item);
    if (!k) throw std::invalid_argument("unknown norm '" + item + "'");
    out.push_back(*k);
  }
  if (out.empty()) throw std::invalid_argument("norm list is empty");
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content << std::endl;
  else
    write_report_file(out_path, content);
}

int cmd_table(const std::string& n_csv, const SearchConfig& cfg,
              const std::string& out_path, const std::string& format) {
  std::vector<int> ns = parse_int_list(n_csv);
  for (int n : ns)
    if (n < 1) throw std::invalid_argument("table needs n >= 1");
  auto table = load_reference_table(default_table_path());
  std::vector<OracleReport> reps = verify_table(ns, cfg, table);
  std::vector<ReportRow> rows = rows_from_oracle_reports(reps, cfg);
  bool all_pass = true, all_sound = true;
  for (const OracleReport& r : reps) {
    all_pass = all_pass && r.pass;
    all_sound = all_sound && r.sound;
  }
  if (format == "csv") {
    std::ostringstream os;
    write_csv(os, rows);
    emit(out_path, os.str());
  } else {
    Json j = report_json(rows, cfg,
                         Json{{"command", "table"}, {"n", ns},
                              {"all_pass", all_pass},
                              {"all_sound", all_sound}});
    emit(out_path, j.dump(2));
  }
  std::cerr << (all_pass ? "table: all rows pass" : "table: FAILURES present")
            << (all_sound ? "" : " (soundness violations)") << "\n";
  return all_pass ? 0 : 1;
}

int run_norms(const ElementChoice& ch, const std::string& norms_csv,
              const SearchConfig& cfg, const std::string& out_path,
              const std::string& format, bool with_witnesses) {
  std::string label;
  TensorElement u = load_element(ch, cfg.seed, label);
  std::vector<NormKind> kinds = parse_norms(norms_csv);
  std::vector<ReportRow> rows;
  bool valid = true;
  for (NormKind k : kinds) {
    NormBracket br = bracket(u, k, cfg);
    ReportRow row;
    row.element = label;
    row.n = u.a();
    row.kind = k;
    row.lower = br.lower;
    row.upper = br.upper;
    row.pass = br.lower <= br.upper + 1e-9;
    row.restarts = cfg.restarts;
    row.seed = cfg.seed;
    row.extra = br.to_json(with_witnesses);
    valid = valid && row.pass;
    rows.push_back(std::move(row));
  }
  if (format == "csv") {
    std::ostringstream os;
    write_csv(os, rows);
    emit(out_path, os.str());
  } else {
    Json j = report_json(
        rows, cfg,
        Json{{"command", with_witnesses ? "bracket" : "norm"},
             {"element", label}});
    emit(out_path, j.dump(2));
  }
  return valid ? 0 : 1;
}

int cmd_check(const std::string& suite, int trials, const SearchConfig& cfg,
              const std::string& out_path) {
  std::optional<SuiteResult> res = run_suite(suite, trials, cfg.seed, cfg);
  if (!res)
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (ruan, algebra, chain, duality)");
  Json j = res->to_json();
  j["config"] = cfg.to_json();
  emit(out_path, j.dump(2));
  if (!res->pass && res->reproducer) {
    const std::string rpath =
        (out_path.empty() ? std::string("check_") + suite : out_path) +
        ".reproducer.json";
    write_report_file(rpath, res->reproducer->dump(2));
    std::cerr << "check: violation reproducer written to " << rpath << "\n";
  }
  std::cerr << "check " << suite << ": "
            << (res->pass ? "pass" : "VIOLATIONS") << " (" << res->trials
            << " trials)\n";
  return res->pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tnorm: certified upper/lower brackets for eight tensor norms on "
      "matrix algebra pairs"};
  app.require_subcommand(1);

  SearchConfig cfg;
  std::string out_path, format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "search restarts");
    sub->add_option("--rank-cap", cfg.rank_cap, "witness rank cap (0: 2ab)");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--level", cfg.level, "matrix level for dual estimates");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  // table
  auto* table = app.add_subcommand("table",
                                   "reproduce the reference table of the 13 "
                                   "catalog elements");
  std::string n_csv;
  table->add_option("--n", n_csv, "comma-separated sizes, e.g. 2,3")
      ->required();
  add_common(table);

  // norm / bracket
  ElementChoice ch;
  std::string norms_csv;
  auto add_element_opts = [&](CLI::App* sub) {
    sub->add_option("--table-id", ch.table_id, "catalog element id (1-13)");
    sub->add_option("--n", ch.n, "size n for --table-id");
    sub->add_option("--element", ch.element_path, "element JSON file");
    sub->add_option("--random", ch.random_spec,
                    "random element spec m=1,a=2,b=2,rank=2");
    sub->add_option("--norm", norms_csv,
                    "comma-separated norms: lambda,s_prime,min,h,proj,schur,"
                    "tb,gamma")
        ->required();
  };
  auto* norm = app.add_subcommand("norm", "compute norm values/brackets");
  add_element_opts(norm);
  add_common(norm);
  auto* brk =
      app.add_subcommand("bracket", "compute brackets with full witnesses");
  add_element_opts(brk);
  add_common(brk);

  // check
  auto* check = app.add_subcommand("check", "run a property suite");
  std::string suite;
  int trials = 50;
  check->add_option("--suite", suite, "ruan | algebra | chain | duality")
      ->required();
  check->add_option("--trials", trials, "number of random trials");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  try {
    if (app.got_subcommand(table)) return cmd_table(n_csv, cfg, out_path,
                                                    format);
    if (app.got_subcommand(norm))
      return run_norms(ch, norms_csv, cfg, out_path, format, false);
    if (app.got_subcommand(brk))
      return run_norms(ch, norms_csv, cfg, out_path, format, true);
    if (app.got_subcommand(check)) return cmd_check(suite, trials, cfg,
                                                    out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
