#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qsu2/report.hpp"

using namespace qsu2;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kResource = 3 };

struct Document {
  PDCode diagram;
  std::optional<std::vector<long>> framings;
  std::optional<long> p;
};

std::string read_input(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ostringstream ss;
  if (arg == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(arg);
  if (!in) throw InvalidInput("cannot read input file '" + arg + "'");
  ss << in.rdbuf();
  return ss.str();
}

Document load_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed diagram document: ") + e.what());
  }
  Document d;
  d.diagram = pd_from_json(j);
  try {
    if (j.contains("framings")) d.framings = j["framings"].get<std::vector<long>>();
    if (j.contains("p")) d.p = j["p"].get<long>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed diagram document: ") + e.what());
  }
  return d;
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("not an integer list: '" + s + "'");
    }
  }
  return out;
}

std::vector<CohomClass> select_classes(const std::string& sel, const std::vector<long>& framings) {
  if (sel == "all") return enumerate_classes(framings);
  if (sel == "trivial") return {CohomClass{}};
  CohomClass c;
  for (long i : parse_longs(sel)) c.members.push_back(static_cast<int>(i - 1));
  std::sort(c.members.begin(), c.members.end());
  c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
  check_class(framings, c);
  return {c};
}

struct Common {
  std::string input, catalog_name, framings, cache_dir, format = "table";
  long p = 3;
  unsigned threads = 0;
  int width_limit = kDefaultWidthLimit;
  bool no_cache = false, timing = false;
};

EvaluatorOptions evaluator_options(const Common& c) {
  EvaluatorOptions o;
  o.width_limit = c.width_limit;
  o.threads = c.threads;
  if (!c.no_cache) {
    if (!c.cache_dir.empty()) o.cache_dir = c.cache_dir;
    else if (const char* env = std::getenv("QSU2_CACHE_DIR"); env && *env) o.cache_dir = env;
    else o.cache_dir = "./.bracket-cache";
  }
  return o;
}

Document load_link(const Common& c) {
  if (!c.input.empty() && !c.catalog_name.empty()) throw InvalidInput("use either --input or --catalog, not both");
  Document d;
  if (!c.catalog_name.empty()) {
    auto e = catalog_entry(c.catalog_name);
    d.diagram = e.diagram;
    d.framings = e.default_framings;
  } else if (!c.input.empty()) {
    d = load_document(read_input(c.input));
  } else {
    throw InvalidInput("no diagram given (use --input or --catalog)");
  }
  if (!c.framings.empty()) d.framings = parse_longs(c.framings);
  return d;
}

void check_format(const std::string& f) {
  if (f != "table" && f != "machine") throw InvalidInput("unknown format '" + f + "' (expected table or machine)");
}

int cmd_ring_info(const Common& c) {
  check_format(c.format);
  auto r = init_ring(c.p);
  auto G = gauss_sum(r);
  long val = valuation_xi_minus_1(G);
  bool square_ok = G * G == CycloNumber::rational(r, BigRational((c.p % 4 == 1 ? 1 : -1) * c.p));
  if (c.format == "machine") {
    json j{{"p", c.p},     {"degree", r->degree()},      {"u", r->u},
           {"epsilon", r->epsilon}, {"eight_bar", r->eight_bar}, {"gauss_valuation", val},
           {"gauss_square_ok", square_ok}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "p            " << c.p << "\n"
              << "field        Q(zeta), zeta = exp(2 pi i / " << r->order() << "), degree " << r->degree() << "\n"
              << "u, epsilon   " << r->u << ", " << (r->epsilon > 0 ? "+1" : "-1") << "\n"
              << "8^-1 mod p   " << r->eight_bar << "\n"
              << "G(xi)^2      " << (square_ok ? "= (-1)^{(p-1)/2} p" : "MISMATCH") << "\n"
              << "v(G(xi))     " << val << "\n";
  }
  return square_ok ? kOk : kInternal;
}

int cmd_invariant(const Common& c, long flag_p, const std::string& theta_sel, const std::string& route_s) {
  check_format(c.format);
  Document d = load_link(c);
  if (flag_p == 0 && !d.p) throw InvalidInput("no p given (document field 'p' or --p)");
  long p = flag_p != 0 ? flag_p : *d.p;
  if (!d.framings) throw InvalidInput("no framings given (document field 'framings' or --framings)");
  auto P = validate_presentation(FramedLink(d.diagram, *d.framings), p);
  Route route = parse_route(route_s);
  auto classes = select_classes(theta_sel, P.link.framings);
  auto ring = init_ring(p);
  BracketEvaluator ev(evaluator_options(c));
  std::vector<ThetaReport> reports;
  bool ok = true;
  for (const auto& th : classes) {
    reports.push_back(tau(P, th, ring, route, ev));
    const auto& r = reports.back();
    ok = ok && r.verdict && r.routes_agree.value_or(true);
    std::cerr << "theta " << class_label(th) << ": " << (r.verdict ? "verdict true" : "verdict FALSE");
    if (r.routes_agree && !*r.routes_agree) std::cerr << ", routes DISAGREE";
    std::cerr << " (" << std::fixed << std::setprecision(3) << r.seconds << " s)\n";
  }
  if (c.format == "machine") {
    json j;
    j["p"] = p;
    j["framings"] = P.link.framings;
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r, c.timing));
    if (c.timing) {
      auto s = ev.stats();
      j["cache"] = {{"memory_hits", s.memory_hits}, {"disk_hits", s.disk_hits}, {"computed", s.computed}};
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "p = " << p << ", framings =";
    for (long f : P.link.framings) std::cout << ' ' << f;
    std::cout << "\n" << theta_table(reports, c.timing);
  }
  return ok ? kOk : kInternal;
}

int cmd_verify(const Common& c, long slack) {
  check_format(c.format);
  auto ring = init_ring(c.p);
  BracketEvaluator ev(evaluator_options(c));
  auto ranges = default_ranges(c.p);
  ranges.bound_slack = slack;
  std::cerr << "lemma suites at p = " << c.p << "\n";
  auto checks = verify_lemmas(ring, ranges, ev);
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.pass;

  auto G = gauss_sum(ring);
  bool gauss_ok = G * G == CycloNumber::rational(ring, BigRational((c.p % 4 == 1 ? 1 : -1) * c.p)) &&
                  valuation_xi_minus_1(G) == (c.p - 1) / 2;
  ok = ok && gauss_ok;

  json theorem = json::array();
  std::ostringstream table;
  for (const auto& e : catalog()) {
    if (!e.algebraically_split) continue;
    std::cerr << "theorem: " << e.name << "\n";
    auto P = validate_presentation(FramedLink(e.diagram, e.default_framings), c.p);
    std::vector<ThetaReport> reports;
    std::string skipped;
    try {
      for (const auto& th : enumerate_classes(P)) reports.push_back(tau(P, th, ring, Route::Lemma, ev));
    } catch (const ResourceLimit& ex) {
      skipped = ex.what();
    }
    for (const auto& r : reports) ok = ok && r.verdict;
    json entry{{"link", e.name}, {"framings", e.default_framings}, {"reports", json::array()}};
    for (const auto& r : reports) entry["reports"].push_back(to_json(r, c.timing));
    if (!skipped.empty()) entry["skipped"] = skipped;
    theorem.push_back(entry);
    table << e.name << " framings";
    for (long f : e.default_framings) table << ' ' << f;
    if (!skipped.empty()) table << ": skipped (" << skipped << ")";
    table << "\n" << theta_table(reports, c.timing) << "\n";
  }

  if (c.format == "machine") {
    json j;
    j["p"] = c.p;
    j["bound_slack"] = slack;
    j["gauss_sum_ok"] = gauss_ok;
    j["lemmas"] = json::array();
    for (const auto& ch : checks) j["lemmas"].push_back(to_json(ch));
    j["theorem"] = theorem;
    j["pass"] = ok;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "gauss sum: " << (gauss_ok ? "pass" : "FAIL") << "\n\n" << lemma_table(checks) << "\n" << table.str();
    std::cout << (ok ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  }
  return ok ? kOk : kInternal;
}

int cmd_bracket(const Common& c) {
  check_format(c.format);
  Document d = load_link(c);
  BracketEvaluator ev(evaluator_options(c));
  LaurentPoly b = unit_from_mult(ev.mult(d.diagram), is_empty_diagram(d.diagram));
  if (c.format == "machine") {
    json j{{"bracket", b.render()}, {"serialized", b.serialize()}, {"crossings", d.diagram.num_crossings()},
           {"components", d.diagram.num_components()}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << b.render() << '\n';
  }
  return kOk;
}

int cmd_catalog(const Common& c) {
  check_format(c.format);
  json arr = json::array();
  std::ostringstream table;
  table << std::left << std::setw(11) << "name" << std::setw(11) << "components" << std::setw(10) << "crossings"
        << std::setw(11) << "framings" << std::setw(7) << "split" << "notes\n";
  for (const auto& e : catalog()) {
    // Entries are rebuilt and checked on every listing.
    PDCode back = pd_from_json(pd_to_json(e.diagram));
    if (!(back == e.diagram) || is_algebraically_split(FramedLink(e.diagram, e.default_framings)) != e.algebraically_split)
      throw InternalError("catalog entry '" + e.name + "' does not re-validate");
    std::string fr;
    for (long f : e.default_framings) fr += (fr.empty() ? "" : ",") + std::to_string(f);
    table << std::setw(11) << e.name << std::setw(11) << e.diagram.num_components() << std::setw(10)
          << e.diagram.num_crossings() << std::setw(11) << fr << std::setw(7) << (e.algebraically_split ? "yes" : "no")
          << e.notes << '\n';
    json j = pd_to_json(e.diagram);
    j["name"] = e.name;
    j["framings"] = e.default_framings;
    j["algebraically_split"] = e.algebraically_split;
    j["notes"] = e.notes;
    arr.push_back(j);
  }
  if (c.format == "machine") std::cout << arr.dump(2) << '\n';
  else std::cout << table.str();
  return kOk;
}

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "table or machine")->capture_default_str();
}
void add_link(CLI::App* sub, Common& c) {
  sub->add_option("--input", c.input, "diagram document: a file, '-' for stdin, or inline text");
  sub->add_option("--catalog", c.catalog_name, "built-in link name");
}
void add_engine(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "worker threads (0: all available)");
  sub->add_option("--width-limit", c.width_limit, "largest boundary width the contraction accepts")->capture_default_str();
  sub->add_option("--cache-dir", c.cache_dir, "bracket cache directory (default: $QSU2_CACHE_DIR or ./.bracket-cache)");
  sub->add_flag("--no-cache", c.no_cache, "disable the disk cache");
  sub->add_flag("--timing", c.timing, "include timings and cache statistics in the output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact SU(2) quantum invariants at 2p-th roots of unity"};
  app.require_subcommand(1);
  Common c;
  std::string theta = "all", route = "lemma";
  long slack = 0, inv_p = 0;

  auto* ring = app.add_subcommand("ring-info", "summary of the cyclotomic field for p");
  ring->add_option("--p", c.p, "odd prime")->required();
  add_format(ring, c);

  auto* inv = app.add_subcommand("invariant", "tau for each selected cohomology class");
  add_link(inv, c);
  inv->add_option("--framings", c.framings, "comma-separated framings, overriding the document");
  inv->add_option("--p", inv_p, "odd prime; overrides the document field 'p'");
  inv->add_option("--theta", theta, "'all', 'trivial' or 1-based component list like 1,3")->capture_default_str();
  inv->add_option("--route", route, "lemma, km or both")->capture_default_str();
  add_format(inv, c);
  add_engine(inv, c);

  auto* ver = app.add_subcommand("verify", "lemma suites and theorem verdicts on the catalog");
  ver->add_option("--p", c.p, "odd prime")->capture_default_str();
  ver->add_option("--bound-slack", slack, "add this to every lemma bound (negative control)");
  add_format(ver, c);
  add_engine(ver, c);

  auto* br = app.add_subcommand("bracket", "Kauffman bracket of a diagram");
  add_link(br, c);
  add_format(br, c);
  add_engine(br, c);

  auto* cat = app.add_subcommand("catalog", "list the built-in links");
  add_format(cat, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*ring) return cmd_ring_info(c);
    if (*inv) return cmd_invariant(c, inv_p, theta, route);
    if (*ver) return cmd_verify(c, slack);
    if (*br) return cmd_bracket(c);
    if (*cat) return cmd_catalog(c);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
