#include "sqrtmap/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <set>
#include <sstream>

#include "sqrtmap/lazy_word.hpp"
#include "sqrtmap/squares.hpp"
#include "sqrtmap/word_equation.hpp"

namespace sqrtmap {

namespace {

using json = nlohmann::ordered_json;

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Report {
  json data = json::object();
  std::string text;
  std::string csv;
  int status = 0;
};

struct WordInput {
  std::string spec;
  std::string kind = "auto";
  std::size_t shift = 0;
  std::string extend = "periodic";
};

std::string read_word_arg(const std::string& arg) {
  if (!arg.empty()) return arg;
  std::string all{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  all.erase(std::remove_if(all.begin(), all.end(), [](unsigned char ch) { return std::isspace(ch); }), all.end());
  if (all.empty()) throw usage_error("no word given on the command line or stdin");
  return all;
}

Word parse_binary(const std::string& text) {
  if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
    std::string bits;
    for (char ch : text.substr(2)) {
      int v;
      if (ch >= '0' && ch <= '9') v = ch - '0';
      else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
      else throw usage_error("bad hex digit in '" + text + "'");
      for (int b = 3; b >= 0; --b) bits.push_back(((v >> b) & 1) ? '1' : '0');
    }
    return Word::binary(bits);
  }
  try {
    return Word::binary(text);
  } catch (const alphabet_error& e) {
    throw usage_error(e.what());
  }
}

bool is_named(const std::string& s) { return s == "gamma1" || s == "gamma2" || s == "s-omega" || s == "l-omega"; }

std::string resolve_kind(const WordInput& in) {
  if (in.kind != "auto") return in.kind;
  if (is_named(in.spec)) return "named";
  if (!in.spec.empty() && in.spec.find_first_not_of("01") == std::string::npos) return "binary";
  if (!in.spec.empty() && in.spec.find_first_not_of("SL") == std::string::npos) return "blocks";
  throw usage_error("cannot tell the kind of word '" + in.spec + "'; pass --input-kind");
}

InfiniteWordSource make_word(const Omega& om, const WordInput& in) {
  const std::string kind = resolve_kind(in);
  if (kind == "named") {
    if (!is_named(in.spec)) throw usage_error("unknown named word '" + in.spec + "'");
    InfiniteWordSource base = in.spec == "gamma1"   ? om.big_gamma(1)
                              : in.spec == "gamma2" ? om.big_gamma(2)
                              : in.spec == "s-omega"
                                  ? om.s_omega(0)
                                  : expand(om.periodic_product(Word::blocks("L")), "L^w");
    return shift(base, in.shift);
  }
  if (kind == "binary") return shift(periodic(parse_binary(in.spec), "(" + in.spec + ")^w"), in.shift);
  if (kind != "blocks") throw usage_error("input kind must be auto, binary, blocks or named");
  if (in.spec.empty() || in.spec.find_first_not_of("SL") != std::string::npos)
    throw usage_error("block words use the letters S and L");
  if (in.shift >= om.n()) throw usage_error("--shift must be below |S| for block words");
  const std::string b = in.spec;
  const int c = om.c();
  std::string desc = "T^" + std::to_string(in.shift) + "(";
  SLProduct prod;
  if (in.extend == "periodic") {
    prod = om.periodic_product(Word::blocks(b), in.shift);
    desc += "(" + b + ")^w)";
  } else if (in.extend == "gamma1" || in.extend == "gamma2") {
    const int which = in.extend == "gamma1" ? 1 : 2;
    prod = om.product([b, c, which](std::size_t t) { return t < b.size() ? b[t] : gamma_star_block(c, which, t); },
                      in.shift);
    desc += b + " Gamma" + std::to_string(which) + "* tail)";
  } else {
    throw usage_error("--extend must be periodic, gamma1 or gamma2");
  }
  return expand(prod, desc);
}

json source_json(const InfiniteWordSource& src, std::size_t len) {
  const Word p = src.prefix(len);
  return json{{"descriptor", src.descriptor()}, {"prefix", p.str()}, {"prefix_len", p.size()}};
}

std::string join_squares(const SquareAlphabet& alph, const std::vector<int>& roots) {
  std::string out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i) out += '.';
    out += alph.square(roots[i]).str();
  }
  return out;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

Report cmd_factorize(const RunConfig& cfg, const std::string& arg) {
  const SquareAlphabet alph(cfg.params.a, cfg.params.b);
  const Word w = parse_binary(read_word_arg(arg));
  const Factorization f = factor_minimal_squares(alph, w);
  Report r;
  std::vector<std::string> squares;
  for (int i : f.roots) squares.push_back(alph.square(i).str());
  r.data = json{{"word", w.str()}, {"squares", squares}, {"roots", f.roots}, {"complete", f.complete}};
  if (f.complete) {
    r.text = join_squares(alph, f.roots) + "\n";
  } else {
    r.data["stop"] = f.stop;
    r.text = "not a product of minimal squares: no minimal square at offset " + std::to_string(f.stop) + "\n";
    r.status = 1;
  }
  return r;
}

Report cmd_sqrt(const RunConfig& cfg, const std::string& arg) {
  const SquareAlphabet alph(cfg.params.a, cfg.params.b);
  const Word w = parse_binary(read_word_arg(arg));
  Report r;
  r.data = json{{"word", w.str()}};
  if (!in_Pi(alph, w)) {
    const Factorization f = factor_minimal_squares(alph, w);
    r.data["root"] = nullptr;
    r.data["stop"] = f.stop;
    r.text = "not a product of minimal squares: no minimal square at offset " + std::to_string(f.stop) + "\n";
    r.status = 1;
    return r;
  }
  const Word root = sqrt_finite(alph, w);
  r.data["root"] = root.str();
  r.text = root.str() + "\n";
  return r;
}

Report cmd_omega_info(const Omega& om) {
  Report r;
  r.data = json{{"a", om.alphabet().a()},
                {"b", om.alphabet().b()},
                {"c", om.c()},
                {"k", om.k()},
                {"S", om.S().str()},
                {"L", om.L().str()},
                {"alpha_bar", to_string(om.alpha_bar())},
                {"slope_cf", om.slope_cf().str()},
                {"l_index", om.l_index()}};
  std::ostringstream os;
  os << "S = " << om.S() << "\nL = " << om.L() << "\nalpha_bar = " << to_string(om.alpha_bar()) << " = "
     << om.slope_cf().str() << "\nk = " << om.k() << ", L = T^" << om.l_index() << "(S)\n";
  r.text = os.str();
  return r;
}

Report cmd_omega_gamma(const Omega& om, int j) {
  if (j < 0) throw usage_error("--j must be nonnegative");
  Report r;
  r.data = json{{"j", j}, {"gamma", om.gamma(j).str()}, {"gamma_bar", om.gamma_bar(j).str()}};
  r.text = "gamma_" + std::to_string(j) + " = " + om.gamma(j).str() + "\ngamma_bar_" + std::to_string(j) + " = " +
           om.gamma_bar(j).str() + "\n";
  return r;
}

Report cmd_omega_classify(const Omega& om, const std::string& blocks, std::size_t l) {
  if (blocks.empty() || blocks.find_first_not_of("SL") != std::string::npos)
    throw usage_error("--blocks takes a nonempty word over S and L");
  if (l >= om.n()) throw usage_error("--shift must be below |S|");
  const TypeInfo t = classify_type(om, om.periodic_product(Word::blocks(blocks), l));
  Report r;
  r.data = json{{"type", std::string(1, to_char(t.type))}, {"pi_prefix_len", t.pi_prefix_len}};
  r.text = std::string("type ") + to_char(t.type) + " (Pi prefix of length " + std::to_string(t.pi_prefix_len) + ")\n";
  return r;
}

Report cmd_classify(const Omega& om, const RunConfig& cfg, const WordInput& in) {
  const InfiniteWordSource src = make_word(om, in);
  const AsymptoticClass cls = asymptotic_class(om, src, cfg.budget);
  Report r;
  r.data = json{{"word", source_json(src, om.n())}, {"class", to_string(cls)}, {"type", nullptr}};
  std::string text = src.descriptor() + ": " + to_string(cls);
  if (src.product()) {
    const char t = to_char(classify_type(om, *src.product()).type);
    r.data["type"] = std::string(1, t);
    text += std::string(", type ") + t;
  }
  r.text = text + "\n";
  return r;
}

Report cmd_orbit(const Omega& om, const RunConfig& cfg, const WordInput& in, int steps) {
  if (steps < 0) throw usage_error("--steps must be nonnegative");
  const InfiniteWordSource src = make_word(om, in);
  const OrbitRecord rec = iterate_sqrt(om, src, steps, cfg.budget.window);
  Report r;
  json js = json::array();
  std::ostringstream os;
  os << "start " << rec.start << "\n";
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const OrbitStep& st = rec.steps[i];
    const std::string type = st.type ? std::string(1, to_char(*st.type)) : "-";
    js.push_back(json{{"step", i},
                      {"fingerprint", st.fingerprint.str()},
                      {"type", st.type ? json(type) : json(nullptr)},
                      {"periodic", st.periodic}});
    os << i << " " << st.fingerprint << " type " << type << (st.periodic ? " periodic" : "") << "\n";
  }
  r.data = json{{"start", rec.start},
                {"steps", js},
                {"n_periodic", opt_json(rec.n_periodic)},
                {"n_fixed", opt_json(rec.n_fixed)},
                {"period", rec.period ? json(rec.period->str()) : json(nullptr)},
                {"fault", rec.fault ? json(rec.fault->message) : json(nullptr)}};
  os << "n_periodic " << opt_int(rec.n_periodic) << "\nn_fixed " << opt_int(rec.n_fixed) << "\n";
  if (rec.period) os << "period " << *rec.period << "\n";
  if (rec.fault) {
    os << "fault at step " << rec.fault_step << ": " << rec.fault->message << "\n";
    r.status = 1;
  }
  r.text = os.str();
  return r;
}

std::string status_of(int value, int published) {
  if (published < 0) return "n/a";
  return value == published ? "PASS" : "FAIL";
}

Report cmd_table1(const RunConfig& cfg, const std::vector<std::size_t>& lengths) {
  const auto rows = table1_experiment(lengths, cfg.budget, cfg.convention);
  Report r;
  json jr = json::array();
  std::ostringstream text, csv;
  csv << "length,n,published_n,status,alternate_n\n";
  text << "convention " << to_string(cfg.convention) << ", depth " << cfg.budget.depth << "\n";
  for (const Table1Row& row : rows) {
    const std::string st = status_of(row.n, row.published_n);
    if (st == "FAIL") r.status = 1;
    jr.push_back(json{{"length", row.length},
                      {"n", row.n},
                      {"published_n", row.published_n >= 0 ? json(row.published_n) : json(nullptr)},
                      {"status", st},
                      {"alternate_n", opt_json(row.alternate_n)},
                      {"truncated", row.truncated},
                      {"psi_agrees", row.psi_agrees},
                      {"witness_shift", row.witness_shift},
                      {"witness_blocks", row.witness_blocks.str()},
                      {"witness_verified", row.witness_verified},
                      {"states", row.states}});
    csv << row.length << "," << row.n << "," << (row.published_n >= 0 ? std::to_string(row.published_n) : "") << "," << st
        << "," << (row.alternate_n ? std::to_string(*row.alternate_n) : "") << "\n";
    text << "|S|=" << row.length << " n=" << row.n << " published=" << (row.published_n >= 0 ? std::to_string(row.published_n) : "-")
         << " " << st;
    if (row.alternate_n) text << " (other convention: n=" << *row.alternate_n << ")";
    text << " witness T^" << row.witness_shift << "(" << row.witness_blocks << "...)"
         << (row.witness_verified ? "" : " unverified") << "\n";
  }
  r.data = json{{"convention", to_string(cfg.convention)}, {"depth", cfg.budget.depth}, {"rows", jr}};
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Report cmd_table2(const std::vector<std::size_t>& lengths) {
  Report r;
  json jr = json::array();
  std::ostringstream text, csv;
  csv << "length,estimate,shown,published,status\n";
  for (const Table2Row& row : table2_experiment(lengths)) {
    const std::string st = row.published ? (*row.published == row.shown ? "PASS" : "FAIL") : "n/a";
    if (st == "FAIL") r.status = 1;
    std::ostringstream est;
    est.precision(10);
    est << row.estimate;
    jr.push_back(json{{"length", row.length},
                      {"estimate", row.estimate},
                      {"shown", row.shown},
                      {"published", row.published ? json(*row.published) : json(nullptr)},
                      {"status", st}});
    csv << row.length << "," << est.str() << "," << row.shown << "," << row.published.value_or("") << "," << st << "\n";
    text << "|S|=" << row.length << " estimate=" << row.shown << " published=" << row.published.value_or("-") << " " << st
         << "\n";
  }
  r.data = json{{"rows", jr}};
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Report cmd_preimages(const Omega& om, const RunConfig& cfg, const std::string& target_text) {
  if (target_text.empty()) throw usage_error("--target is required");
  const Word target = parse_binary(target_text);
  const auto found = find_preimages(om, target, cfg.budget);
  Report r;
  json jp = json::array();
  std::ostringstream os;
  os << found.size() << " preimage(s) of " << target << "\n";
  for (const auto& d : found) {
    jp.push_back(json{{"shift", d.shift}, {"blocks", d.blocks.str()}, {"letters", d.letters.str()}});
    os << "T^" << d.shift << "(" << d.blocks << "...) = " << d.letters << "...\n";
  }
  r.data = json{{"target", target.str()}, {"preimages", jp}, {"zs_gamma_form", nullptr}};
  if (found.size() == 2) {
    const PairInspection pi = inspect_preimage_pair(om, found[0].letters, found[1].letters);
    r.data["zs_gamma_form"] = pi.zs_gamma_form;
    os << (pi.zs_gamma_form ? "pair has the form zS Gamma1 / zS Gamma2, z = " + pi.z.str()
                            : "pair is not of the form zS Gamma: " + pi.reason)
       << "\n";
    if (!pi.zs_gamma_form) r.status = 1;
  }
  if (found.size() > 2) r.status = 1;
  r.text = os.str();
  return r;
}

Report cmd_limit_set(const Omega& om, const RunConfig& cfg, std::size_t samples) {
  const LimitSetReport rep = limit_set_experiment(om, samples, cfg.budget.depth, cfg.budget.seed, cfg.budget.cap);
  Report r;
  r.data = json{{"depth", cfg.budget.depth},
                {"omega_s_samples", rep.omega_s_samples},
                {"chains_complete", rep.chains_complete},
                {"other_samples", rep.other_samples},
                {"reached", rep.reached},
                {"max_steps", rep.max_steps},
                {"failures", rep.failures}};
  std::ostringstream os;
  os << "preimage chains of depth " << cfg.budget.depth << ": " << rep.chains_complete << "/" << rep.omega_s_samples
     << "\nreached S^w or L^w: " << rep.reached << "/" << rep.other_samples << " (max " << rep.max_steps
     << " steps)\n";
  for (const auto& f : rep.failures) os << "failure: " << f << "\n";
  if (!rep.failures.empty()) r.status = 1;
  r.text = os.str();
  return r;
}

Report cmd_periodic_points(const Omega& om, const RunConfig& cfg, int doubling_imax) {
  const PeriodicPointReport rep = periodic_point_search(om, cfg.budget);
  Report r;
  json js = json::array();
  std::set<std::string> names;
  std::ostringstream os;
  os << rep.candidates << " candidates, " << rep.survivors.size() << " not refuted\n";
  for (const auto& s : rep.survivors) {
    names.insert(s.name);
    js.push_back(json{{"descriptor", s.descriptor}, {"name", s.name}, {"period", s.period}});
    os << (s.name.empty() ? "?" : s.name) << " " << s.descriptor << " period " << s.period << "\n";
  }
  const bool expected = names == std::set<std::string>{"Gamma1", "Gamma2", "S^w", "L^w"};
  if (!expected) r.status = 1;
  r.data = json{{"candidates", rep.candidates}, {"survivors", js}, {"expected_set", expected}};
  if (doubling_imax > 0) {
    const bool ok = doubling_period_claim(om.c(), doubling_imax);
    r.data["doubling_claim"] = ok;
    os << "doubling period claim up to i=" << doubling_imax << ": " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) r.status = 1;
  }
  r.text = os.str();
  return r;
}

json certificate_json(const SolutionCertificate& c) {
  return json{{"word", c.word.str()}, {"roots", c.roots}, {"verified", c.verified}};
}

Report cmd_eq_check(const RunConfig& cfg, const std::string& arg) {
  const SquareAlphabet alph(cfg.params.a, cfg.params.b);
  const Word w = parse_binary(read_word_arg(arg));
  Report r;
  if (auto cert = is_solution(alph, w)) {
    r.data = certificate_json(*cert);
    std::string roots;
    for (int i : cert->roots) roots += (roots.empty() ? "" : ".") + alph.root(i).str();
    r.text = "solution: " + roots + (cert->verified ? "" : " (tokenization mismatch)") + "\n";
    if (!cert->verified) r.status = 1;
  } else {
    r.data = json{{"word", w.str()}, {"roots", nullptr}, {"verified", false}};
    r.text = "not a solution\n";
  }
  return r;
}

Report cmd_eq_audit(const Omega& om, const std::string& arg) {
  const Word w = parse_binary(read_word_arg(arg));
  const ConjugateAudit a = conjugate_solution_audit(om, w);
  Report r;
  std::vector<std::string> conj;
  for (const Word& v : a.solution_conjugates) conj.push_back(v.str());
  r.data = json{{"word", w.str()}, {"solution_conjugates", conj}, {"passed", a.passed}};
  std::ostringstream os;
  os << "conjugates that are solutions:";
  for (const auto& v : conj) os << " " << v;
  os << "\n" << (a.passed ? "PASS" : "FAIL") << "\n";
  r.text = os.str();
  if (!a.passed) r.status = 1;
  return r;
}

Report cmd_eq_enumerate(const Omega& om, const RunConfig& cfg, std::size_t bmax) {
  if (bmax == 0) bmax = 4 * om.n();
  const auto sols = enumerate_solutions(om, bmax, cfg.corpus_len);
  Report r;
  json js = json::array();
  std::ostringstream os;
  for (const auto& c : sols) {
    js.push_back(certificate_json(c));
    os << c.word << " (" << c.word.size() << ")\n";
  }
  r.data = json{{"bmax", bmax}, {"solutions", js}};
  r.text = os.str();
  return r;
}

Report cmd_orbits(const Omega* om, int n, const std::string& assign) {
  const DoublingPattern p = doubling_orbits(n);
  Report r;
  json jo = json::array();
  for (const auto& o : p.orbits) jo.push_back(o);
  r.data = json{{"n", n}, {"orbits", jo}};
  std::string text = format_orbits(p) + "\n";
  if (!assign.empty()) {
    std::vector<char> letters(assign.begin(), assign.end());
    // The image of S starts with L and the image of L with S.
    const auto [image_s, image_l] = pattern_to_substitution(p, letters);
    r.data["substitution"] = json{{"S", image_s.str()}, {"L", image_l.str()}};
    text += "S -> " + image_s.str() + ", L -> " + image_l.str() + "\n";
    if (om) {
      const bool ok = check_self_sqrt(*om, image_s) && check_self_sqrt(*om, image_l);
      r.data["self_sqrt"] = ok;
      text += std::string("sigma(u)^w fixed by the square root: ") + (ok ? "PASS" : "FAIL") + "\n";
      if (!ok) r.status = 1;
    }
  }
  r.text = text;
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw usage_error("cannot open " + path + " for writing");
  f << content;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  if (!args.empty() && args.front() == "dynamics") args.erase(args.begin());

  RunConfig cfg;
  std::string seed_word = "plain", convention = "left", format = "text";
  std::vector<long> tail;

  CLI::App app{"Square root map on optimal squareful words", "sqrtmap_cli"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--a", cfg.params.a, "Alphabet parameter a")->check(CLI::PositiveNumber);
  app.add_option("--b", cfg.params.b, "Alphabet parameter b")->check(CLI::NonNegativeNumber);
  app.add_option("--c", cfg.params.c, "Substitution parameter c")->check(CLI::PositiveNumber);
  app.add_option("--k", cfg.params.k, "Index of the reversed standard word (0 picks the least valid k)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tail", tail, "Partial quotients after d2 (default all ones)")->delimiter(',');
  app.add_option("--seed-word", seed_word, "S or its swapped companion")->check(CLI::IsMember({"plain", "swapped"}));
  app.add_option("--convention", convention, "Endpoint convention")->check(CLI::IsMember({"left", "right"}));
  app.add_option("--depth", cfg.budget.depth, "Blocks per window or preimage chain depth")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.budget.cap, "Maximum number of square root steps")->check(CLI::PositiveNumber);
  app.add_option("--window", cfg.budget.window, "Letters compared (0 picks a default)");
  app.add_option("--budget", cfg.budget.budget, "Samples or enumerated starts")->check(CLI::PositiveNumber);
  app.add_option("--corpus-len", cfg.corpus_len, "Letters of Gamma1 scanned by enumerations");
  app.add_option("--rng-seed", cfg.budget.seed, "Seed for sampled experiments");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", cfg.out_file, "Write the output to this file");
  app.add_option("--json", cfg.json_file, "Also write the JSON report to this file");

  std::string word_arg;
  WordInput win;
  int j = 0, steps = 8, n_orbits = 7, doubling_imax = 0;
  std::string blocks, target, assign;
  std::size_t samples = 100, bmax = 0;
  std::vector<std::size_t> fib{8, 13, 21, 34, 55, 89};
  std::vector<std::size_t> fib2{8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181, 6765};

  auto add_word_input = [&](CLI::App* sub) {
    sub->add_option("--word", win.spec, "0/1 word (periodic), S/L block word, or gamma1, gamma2, s-omega, l-omega")
        ->required();
    sub->add_option("--input-kind", win.kind, "How to read --word")
        ->check(CLI::IsMember({"auto", "binary", "blocks", "named"}));
    sub->add_option("--shift", win.shift, "Letters dropped from the front");
    sub->add_option("--extend", win.extend, "Continuation of a block word")
        ->check(CLI::IsMember({"periodic", "gamma1", "gamma2"}));
  };

  auto* factorize = app.add_subcommand("factorize", "Factor a word into minimal squares");
  factorize->add_option("word", word_arg, "0/1 word (stdin when omitted)");
  auto* sqrt = app.add_subcommand("sqrt", "Square root of a product of minimal squares");
  sqrt->add_option("word", word_arg, "0/1 word (stdin when omitted)");

  auto* omega = app.add_subcommand("omega", "Building blocks of Omega");
  omega->require_subcommand(1);
  auto* omega_info = omega->add_subcommand("info", "S, L and the slope");
  auto* omega_gamma = omega->add_subcommand("gamma", "gamma_j and gamma_bar_j");
  omega_gamma->add_option("--j", j, "Level")->required();
  auto* omega_classify = omega->add_subcommand("classify", "Type of T^l of a periodic S/L product");
  omega_classify->add_option("--blocks", blocks, "Block period over S, L")->required();
  omega_classify->add_option("--shift", win.shift, "Shift l, 0 <= l < |S|");

  auto* classify = app.add_subcommand("classify", "Asymptotic class of a word");
  add_word_input(classify);
  auto* orbit = app.add_subcommand("orbit", "Iterate the square root");
  add_word_input(orbit);
  orbit->add_option("--steps", steps, "Number of steps");

  auto* table1 = app.add_subcommand("table1", "Longest route to S^w or L^w");
  table1->add_option("--fib", fib, "Lengths of reversed Fibonacci words")->delimiter(',');
  auto* table2 = app.add_subcommand("table2", "Logarithmic step estimate");
  table2->add_option("--fib", fib2, "Lengths of reversed Fibonacci words")->delimiter(',');

  auto* preimages = app.add_subcommand("preimages", "Preimages of a finite prefix inside Omega");
  preimages->add_option("--target", target, "0/1 word or 0x-prefixed hex")->required();
  auto* limit_set = app.add_subcommand("limit-set", "Preimage chains and escape to S^w/L^w");
  limit_set->add_option("--samples", samples, "Words sampled per family")->check(CLI::PositiveNumber);
  auto* periodic_points = app.add_subcommand("periodic-points", "Refutation search for periodic points");
  periodic_points->add_option("--doubling-imax", doubling_imax, "Also check the doubling period claim up to i");

  auto* eq = app.add_subcommand("eq", "The word equation X1^2...Xn^2 = (X1...Xn)^2");
  eq->require_subcommand(1);
  auto* eq_check = eq->add_subcommand("check", "Is the word a solution");
  eq_check->add_option("word", word_arg, "0/1 word (stdin when omitted)");
  auto* eq_audit = eq->add_subcommand("audit", "Conjugates of a solution that are solutions");
  eq_audit->add_option("word", word_arg, "0/1 word (stdin when omitted)");
  auto* eq_enumerate = eq->add_subcommand("enumerate", "Solutions whose square is a factor of Omega");
  eq_enumerate->add_option("--bmax", bmax, "Longest solution (0 picks 4|S|)");
  auto* eq_orbits = eq->add_subcommand("orbits", "Orbits of i -> 2i mod n");
  auto* orbits = app.add_subcommand("orbits", "Orbits of i -> 2i mod n");
  for (auto* sub : {eq_orbits, orbits}) {
    sub->add_option("--n", n_orbits, "Odd modulus")->check(CLI::PositiveNumber);
    sub->add_option("--assign", assign, "One letter S or L per orbit, in orbit order");
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  try {
    cfg.params.seed = parse_seed(seed_word);
    cfg.params.tail = tail;
    cfg.convention = parse_convention(convention);
    cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;
    auto make_omega = [&] { return Omega(cfg.params); };

    if (factorize->parsed()) {
      report = cmd_factorize(cfg, word_arg);
    } else if (sqrt->parsed()) {
      report = cmd_sqrt(cfg, word_arg);
    } else if (omega_info->parsed()) {
      report = cmd_omega_info(make_omega());
    } else if (omega_gamma->parsed()) {
      report = cmd_omega_gamma(make_omega(), j);
    } else if (omega_classify->parsed()) {
      report = cmd_omega_classify(make_omega(), blocks, win.shift);
    } else if (classify->parsed()) {
      report = cmd_classify(make_omega(), cfg, win);
    } else if (orbit->parsed()) {
      report = cmd_orbit(make_omega(), cfg, win, steps);
    } else if (table1->parsed()) {
      report = cmd_table1(cfg, fib);
    } else if (table2->parsed()) {
      report = cmd_table2(fib2);
    } else if (preimages->parsed()) {
      report = cmd_preimages(make_omega(), cfg, target);
    } else if (limit_set->parsed()) {
      report = cmd_limit_set(make_omega(), cfg, samples);
    } else if (periodic_points->parsed()) {
      report = cmd_periodic_points(make_omega(), cfg, doubling_imax);
    } else if (eq_check->parsed()) {
      report = cmd_eq_check(cfg, word_arg);
    } else if (eq_audit->parsed()) {
      report = cmd_eq_audit(make_omega(), word_arg);
    } else if (eq_enumerate->parsed()) {
      report = cmd_eq_enumerate(make_omega(), cfg, bmax);
    } else if (eq_orbits->parsed() || orbits->parsed()) {
      std::optional<Omega> om;
      if (!assign.empty()) om.emplace(cfg.params);
      report = cmd_orbits(om ? &*om : nullptr, n_orbits, assign);
    } else {
      err << "no subcommand\n";
      return 2;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  }

  std::string body;
  switch (cfg.format) {
    case OutputFormat::json:
      body = report.data.dump(2) + "\n";
      break;
    case OutputFormat::csv:
      body = report.csv.empty() ? report.text : report.csv;
      break;
    case OutputFormat::text:
      body = report.text;
      break;
  }
  try {
    if (!cfg.json_file.empty()) write_file(cfg.json_file, report.data.dump(2) + "\n");
    if (!cfg.out_file.empty()) {
      write_file(cfg.out_file, body);
    } else {
      out << body;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return report.status;
}

}  // namespace sqrtmap
