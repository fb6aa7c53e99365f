#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmseq/tmseq.hpp"

namespace tmseq::cli {

using json = nlohmann::ordered_json;

enum exit_code : int { ok = 0, failed = 1, usage = 2, domain = 3, budget = 4 };

inline const char* k_mapping_help =
    "Letters of the seven-letter alphabet are written in ASCII:\n"
    "  a    a\n"
    "  b^<  b-hat, connector to the left\n"
    "  b^>  b-hat, connector to the right\n"
    "  bh<  plain b, connector to the left\n"
    "  bh>  plain b, connector to the right\n"
    "  c<   c, connector to the left\n"
    "  c>   c, connector to the right\n";

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw usage_error("not a non-negative integer: '" + s + "'");
  return v;
}

inline morphic_stream named_stream(const std::string& name) {
  if (name == "tm") return catalog::thue_morse();
  if (name == "A") return catalog::ternary_A();
  if (name == "Abar") return catalog::berstel_Abar();
  if (name == "Aplus") return matching::phi_plus();
  if (name == "B") return catalog::gap_B();
  if (name == "Bbar") return catalog::bbar();
  throw usage_error("unknown sequence '" + name + "'");
}

inline word named_prefix(const std::string& name, std::size_t n) {
  if (name == "Bcheck") return catalog::check_B_prefix(n);
  return named_stream(name).prefix(n);
}

inline std::vector<std::string> letter_names(const word& w) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (auto s : w.letters()) out.push_back(w.alpha()->name(s));
  return out;
}

inline std::string members_str(const gaps::gap_class& g) {
  std::string s;
  for (auto m : g.members) s += (s.empty() ? "" : ",") + gaps::member_name(m);
  return s;
}

inline std::string join(const std::vector<std::uint64_t>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

inline transducer::weighted_transducer load_transducer(const std::string& src) {
  if (src == "t1") return transducer::hexagon_T1();
  if (src == "t2") return transducer::build_T2();
  if (src == "t2base2") return transducer::base2_reduction(transducer::build_T2());
  std::ifstream in(src);
  if (!in) throw domain_error("cannot open transducer file '" + src + "'");
  return transducer::read_text(in);
}

// Discrepancy 3*D_N over [lo, hi] by the chosen method.
inline std::vector<std::int64_t> three_d_range(std::uint64_t lo, std::uint64_t hi, const std::string& method) {
  std::vector<std::int64_t> out;
  out.reserve(hi - lo + 1);
  if (method == "brute") {
    if (hi >= (std::uint64_t{1} << 32)) throw domain_error("brute method is limited to N < 2^32");
    auto all = transducer::discrepancy_brute_range(hi + 1);
    out.assign(all.begin() + static_cast<std::ptrdiff_t>(lo), all.end());
    return out;
  }
  if (method == "degree") {
    for (auto N = lo; N <= hi; ++N) out.push_back(transducer::discrepancy_by_degree(N).num3());
    return out;
  }
  const auto t = method == "t2" ? transducer::build_T2() : transducer::base2_reduction(transducer::build_T2());
  for (auto N = lo; N <= hi; ++N) out.push_back(t.run(N).num3());
  return out;
}

struct check {
  std::string name;
  std::function<bool()> run;
};

inline std::vector<check> verify_checks(const std::string& suite) {
  std::vector<check> all;
  auto add = [&](const std::string& group, std::string name, std::function<bool()> f) {
    if (suite == "all" || suite == group) all.push_back({group + "." + std::move(name), std::move(f)});
  };
  add("words", "tm_prefix", [] {
    return catalog::thue_morse().prefix(32).str() == "01101001100101101001011001101001";
  });
  add("words", "tm_from_A", [] {
    auto a = catalog::ternary_A();
    return catalog::reconstruct_tm_via(catalog::f(), a, 1 << 14) == catalog::thue_morse().prefix(1 << 14);
  });
  add("words", "B_is_scan_of_01", [] {
    auto t = catalog::thue_morse();
    auto scan = gaps_by_scan(t, word::parse(catalog::binary(), "01"), 1 << 12);
    return catalog::gap_values(catalog::gap_B().prefix(1 << 12)) == scan;
  });
  add("words", "Bcheck_is_scan_of_10", [] {
    auto t = catalog::thue_morse();
    auto scan = gaps_by_scan(t, word::parse(catalog::binary(), "10"), 1 << 12);
    return catalog::gap_values(catalog::check_B_prefix(1 << 12)) == scan;
  });
  add("words", "pi_of_Abar_is_A", [] {
    return apply(catalog::pi(), catalog::berstel_Abar().prefix(1 << 14)) == catalog::ternary_A().prefix(1 << 14);
  });
  add("gaps", "classify_00110", [] {
    auto g = gaps::classify(word::parse(catalog::binary(), "00110"));
    return g.k == 2 && g.sigma0 == 1 && g.sigma1 == 3u;
  });
  add("gaps", "morphic_equals_scan", [] {
    auto t = catalog::thue_morse();
    const auto text = t.prefix(1 << 12);
    for (std::size_t n = 2; n <= 8; ++n) {
      for (std::size_t i = 0; i + n <= 512; ++i) {
        auto w = text.substr(i, n);
        if (gaps::gap_stream(w, 64) != gaps_by_scan(t, w, 64)) return false;
      }
    }
    return true;
  });
  add("matching", "closed_iterates", [] {
    for (unsigned k = 0; k <= 5; ++k) {
      auto w = matching::phi_plus_power(k);
      auto m = matching::find_matching(w);
      if (!matching::validate_matching(w, m).ok()) return false;
      auto g = matching::gamma(matching::rotate_along_links(w, m)).str();
      for (std::size_t x = 0; x < g.size(); ++x) {
        if (g[x] != "abc"[x % 3]) return false;
      }
    }
    return true;
  });
  add("matching", "degree_equals_T1", [] {
    auto t1 = transducer::hexagon_T1();
    auto d = matching::degrees(1 << 10);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (t1.run(j).num3() != 3 * d[j].value()) return false;
    }
    return true;
  });
  add("discrepancy", "methods_agree", [] {
    const std::uint64_t n = 1 << 12;
    auto a = three_d_range(0, n - 1, "brute"), b = three_d_range(0, n - 1, "degree");
    auto c = three_d_range(0, n - 1, "t2"), d = three_d_range(0, n - 1, "t2base2");
    return a == b && b == c && c == d;
  });
  add("discrepancy", "D41", [] { return transducer::build_T2().run(41) == third::from_num3(1); });
  add("residue", "hit_classes", [] {
    for (std::uint64_t m = 1; m <= 8; ++m) {
      for (std::uint64_t a = 0; a < m; ++a) {
        auto h = residue::hit_residue_class(0, m, static_cast<std::int64_t>(a), 14);
        if (!h || h->value % m != a || !residue::verify_occurrence(h->spec)) return false;
      }
    }
    return true;
  });
  add("residue", "missing_digit_count", [] { return residue::enumerate_W(0, 6).size() == 729; });
  add("kernel", "A_closes", [] {
    auto a = catalog::ternary_A().prefix(kernel::kernel_prefix_needed(2, 6, 256)).letters();
    return kernel::explore_kernel(std::span<const symbol>(a), 2, 6, 256).closed;
  });
  add("kernel", "Bbar_squarefree", [] {
    auto b = catalog::bbar().prefix(1 << 11).letters();
    return kernel::is_squarefree(std::span<const symbol>(b));
  });
  if (all.empty()) throw usage_error("unknown verify suite '" + suite + "'");
  return all;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thue-Morse gap sequences, discrepancy transducers and related tools.\n\n" +
                   std::string(k_mapping_help),
               "tmseq"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(32);

  std::string format = "text";
  std::string output;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("-o,--output", output, "Write to this file instead of standard output");
  app.footer("Streams are limited to TMSEQ_STREAM_BUDGET letters (default 4194304).\n"
             "Exit codes: 0 ok, 1 verification failure, 2 usage, 3 domain error, 4 budget exceeded.");

  std::string seq_name;
  std::size_t length = 0;
  auto* gen = app.add_subcommand("generate", "Print a prefix of a sequence");
  gen->add_option("sequence", seq_name, "tm, A, Abar, Aplus, B, Bbar or Bcheck")->required();
  gen->add_option("length", length, "Number of letters")->required();

  std::string factor, method, family = "any";
  std::size_t count = 0;
  auto* gp = app.add_subcommand("gaps", "Gaps between successive occurrences of a factor of t");
  gp->add_option("factor", factor, "Word over {0,1}")->required();
  gp->add_option("count", count, "Number of gaps")->required();
  gp->add_option("method", method, "morphic (default) or scan")->check(CLI::IsMember({"morphic", "scan"}));
  gp->add_option("--family", family, "Block family for classification")
      ->check(CLI::IsMember({"any", "alternating", "constant"}));

  std::string range, dmethod = "t2";
  auto* dc = app.add_subcommand("discrepancy", "3*D_N for one N or a range a..b");
  dc->add_option("n", range, "N or a..b")->required();
  dc->add_option("method", dmethod, "brute, degree, t2 (default) or t2base2")
      ->check(CLI::IsMember({"brute", "degree", "t2", "t2base2"}));

  unsigned depth = 0;
  std::string action;
  auto* mt = app.add_subcommand("matching", "Links, rotation and degrees of (phi+)^k(a)");
  mt->add_option("k", depth, "Iteration count")->required();
  mt->add_option("action", action, "links, rotate or degrees")
      ->required()
      ->check(CLI::IsMember({"links", "rotate", "degrees"}));

  std::string kseq;
  unsigned kbase = 2, kdepth = 8;
  std::size_t kprefix = 1024;
  auto* kn = app.add_subcommand("kernel", "Explore the k-kernel by prefix fingerprints");
  kn->add_option("sequence", kseq, "tm, A, Abar, B, Bbar or Bcheck")->required();
  kn->add_option("--base", kbase, "Kernel base k");
  kn->add_option("--depth", kdepth, "Maximal depth");
  kn->add_option("--prefix", kprefix, "Fingerprint length L");

  unsigned mu = 0, bound = 12;
  std::uint64_t modulus = 1;
  std::int64_t res = 0;
  auto* rs = app.add_subcommand("residue", "Find an occurrence of psi^(4 mu)(a) in a residue class");
  rs->add_option("mu", mu, "Block order")->required();
  rs->add_option("modulus", modulus, "Modulus m")->required();
  rs->add_option("residue", res, "Residue a")->required();
  rs->add_option("--bound", bound, "Maximal number of digits");

  std::uint64_t d = 3, ell = 1;
  unsigned lambda = 0, nu_max = 40;
  auto* ex = app.add_subcommand("expsum", "|G(l/d, lambda, nu)| for nu up to nu-max");
  ex->add_option("d", d, "Denominator")->required();
  ex->add_option("ell", ell, "Numerator")->required();
  ex->add_option("--lambda", lambda, "Lowest digit index");
  ex->add_option("--nu-max", nu_max, "Largest nu");

  std::string tsub, tsrc, tn;
  auto* tr = app.add_subcommand("transducer", "Dump, run or base-2 reduce a weighted transducer");
  tr->add_option("action", tsub, "dump, run or reduce")->required()->check(CLI::IsMember({"dump", "run", "reduce"}));
  tr->add_option("source", tsrc, "t1, t2, t2base2 or a file in text format")->required();
  tr->add_option("n", tn, "Input for run");

  std::string suite = "all";
  auto* vf = app.add_subcommand("verify", "Run cross-checks and print a pass/fail table");
  vf->add_option("suite", suite, "all, words, gaps, matching, discrepancy, residue or kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "Run with --help for usage.\n";
    return usage;
  }

  std::ostringstream buf;
  int code = ok;
  try {
    if (gen->parsed()) {
      auto w = named_prefix(seq_name, length);
      auto names = letter_names(w);
      if (format == "json") {
        buf << json{{"sequence", seq_name}, {"length", length}, {"letters", names}}.dump() << "\n";
      } else if (format == "csv") {
        buf << "i,letter\n";
        for (std::size_t i = 0; i < names.size(); ++i) buf << i << "," << names[i] << "\n";
      } else {
        buf << w.str(seq_name == "Aplus" ? " " : "") << "\n";
      }
    } else if (gp->parsed()) {
      const auto w = word::parse(catalog::binary(), factor);
      const auto fam = family == "alternating" ? gaps::block_family::alternating
                       : family == "constant"  ? gaps::block_family::constant
                                               : gaps::block_family::any;
      const bool scan = method == "scan";
      auto g = gaps::classify(w, fam);
      std::vector<std::uint64_t> gs;
      if (scan) {
        auto t = catalog::thue_morse();
        gs = gaps_by_scan(t, w, count);
      } else {
        gs = gaps::gap_stream(g, count);
      }
      if (format == "json") {
        json j{{"factor", factor}, {"method", scan ? "scan" : "morphic"}};
        if (!scan) {
          j["k"] = g.k;
          j["members"] = members_str(g);
          j["s0"] = g.sigma0;
          j["s1"] = g.sigma1 ? json(*g.sigma1) : json(nullptr);
        }
        j["gaps"] = gs;
        buf << j.dump() << "\n";
      } else if (format == "csv") {
        buf << "index,gap\n";
        for (std::size_t i = 0; i < gs.size(); ++i) buf << i << "," << gs[i] << "\n";
      } else {
        if (!scan) {
          buf << "k=" << g.k << " members=" << members_str(g) << " s0=" << g.sigma0;
          if (g.sigma1) buf << " s1=" << *g.sigma1;
          buf << "\n";
        }
        buf << join(gs) << "\n";
      }
    } else if (dc->parsed()) {
      std::uint64_t lo, hi;
      if (auto dots = range.find(".."); dots != std::string::npos) {
        lo = parse_u64(range.substr(0, dots));
        hi = parse_u64(range.substr(dots + 2));
        if (lo > hi) throw usage_error("empty range '" + range + "'");
      } else {
        lo = hi = parse_u64(range);
      }
      auto v = three_d_range(lo, hi, dmethod);
      if (format == "json") {
        json arr = json::array();
        for (std::uint64_t N = lo; N <= hi; ++N) arr.push_back({{"N", N}, {"threeD", v[N - lo]}});
        buf << arr.dump() << "\n";
      } else {
        const char* sep = format == "csv" ? "," : " ";
        if (format == "csv") buf << "N,threeD\n";
        for (std::uint64_t N = lo; N <= hi; ++N) buf << N << sep << v[N - lo] << "\n";
      }
    } else if (mt->parsed()) {
      auto w = matching::phi_plus_power(depth);
      if (action == "links") {
        auto m = matching::find_matching(w);
        std::sort(m.begin(), m.end(), [](const auto& x, const auto& y) { return x.i < y.i; });
        auto dir = [&](const matching::link& l) {
          return matching::decode(w[l.i]).base == matching::base_type::c ? "cb" : "bc";
        };
        if (format == "json") {
          json arr = json::array();
          for (const auto& l : m) arr.push_back({{"i", l.i}, {"j", l.j}, {"dir", dir(l)}});
          buf << arr.dump() << "\n";
        } else {
          const char* sep = format == "csv" ? "," : " ";
          if (format == "csv") buf << "i,j,dir\n";
          for (const auto& l : m) buf << l.i << sep << l.j << sep << dir(l) << "\n";
        }
      } else if (action == "rotate") {
        auto r = matching::rotate_along_links(w, matching::find_matching(w));
        auto g = matching::gamma(r);
        if (format == "json") {
          buf << json{{"rotated", letter_names(r)}, {"gamma", g.str()}}.dump() << "\n";
        } else if (format == "csv") {
          buf << "i,letter,gamma\n";
          for (std::size_t i = 0; i < r.size(); ++i) buf << i << "," << r.alpha()->name(r[i]) << "," << g.alpha()->name(g[i]) << "\n";
        } else {
          buf << r.str(" ") << "\n" << g.str() << "\n";
        }
      } else {
        auto ds = matching::degrees(w.size());
        if (format == "json") {
          json arr = json::array();
          for (const auto& x : ds) arr.push_back(x.value());
          buf << arr.dump() << "\n";
        } else if (format == "csv") {
          buf << "j,degree\n";
          for (std::size_t j = 0; j < ds.size(); ++j) buf << j << "," << ds[j].value() << "\n";
        } else {
          for (std::size_t j = 0; j < ds.size(); ++j) buf << (j ? " " : "") << ds[j].value();
          buf << "\n";
        }
      }
    } else if (kn->parsed()) {
      if (kseq == "Aplus") throw usage_error("kernel accepts tm, A, Abar, B, Bbar or Bcheck");
      auto pre = named_prefix(kseq, kernel::kernel_prefix_needed(kbase, kdepth, kprefix)).letters();
      auto rep = kernel::explore_kernel(std::span<const symbol>(pre), kbase, kdepth, kprefix);
      if (format == "json") {
        buf << json{{"sequence", kseq},         {"base", kbase},
                    {"depth", kdepth},          {"L", kprefix},
                    {"count", rep.count()},     {"closed", rep.closed},
                    {"explored_depth", rep.explored_depth}, {"new_per_depth", rep.new_per_depth},
                    {"total_per_depth", rep.total_per_depth}}
                   .dump()
            << "\n";
      } else if (format == "csv") {
        buf << "depth,new,total\n";
        for (std::size_t j = 0; j < rep.new_per_depth.size(); ++j) {
          buf << j << "," << rep.new_per_depth[j] << "," << rep.total_per_depth[j] << "\n";
        }
      } else {
        buf << "sequence=" << kseq << " base=" << kbase << " depth=" << kdepth << " L=" << kprefix
            << " count=" << rep.count() << " closed=" << (rep.closed ? "yes" : "no") << "\n";
        for (std::size_t j = 0; j < rep.total_per_depth.size(); ++j) buf << (j ? " " : "") << rep.total_per_depth[j];
        buf << "\n";
      }
    } else if (rs->parsed()) {
      auto h = residue::hit_residue_class(mu, modulus, res, bound);
      if (!h) throw domain_error("no occurrence found within " + std::to_string(bound) + " digits");
      const bool verified = residue::verify_occurrence(h->spec);
      std::vector<std::uint64_t> digits(h->spec.digits.begin(), h->spec.digits.end());
      std::vector<std::uint64_t> phases;
      for (auto p : h->phases) phases.push_back(static_cast<std::uint64_t>(p));
      if (format == "json") {
        buf << json{{"mu", mu},         {"modulus", modulus}, {"residue", res},          {"N", h->value},
                    {"digits", digits}, {"phases", phases},   {"verified", verified}}
                   .dump()
            << "\n";
      } else if (format == "csv") {
        buf << "mu,modulus,residue,N,digits,verified\n"
            << mu << "," << modulus << "," << res << "," << h->value << "," << join(digits, "") << ","
            << (verified ? 1 : 0) << "\n";
      } else {
        buf << "N=" << h->value << " mu=" << mu << " digits=" << join(digits, "") << " phases=" << join(phases, "")
            << " verified=" << (verified ? "yes" : "no") << "\n";
      }
      if (!verified) code = failed;
    } else if (ex->parsed()) {
      if (d < 1) throw domain_error("denominator must be positive");
      if (lambda > nu_max) throw domain_error("need lambda <= nu-max");
      std::vector<double> vals;
      for (unsigned nu = lambda; nu <= nu_max; ++nu) vals.push_back(std::abs(residue::G_product(ell, d, lambda, nu)));
      if (format == "json") {
        json arr = json::array();
        for (unsigned nu = lambda; nu <= nu_max; ++nu) arr.push_back({{"nu", nu}, {"absG", vals[nu - lambda]}});
        buf << arr.dump() << "\n";
      } else {
        const char* sep = format == "csv" ? "," : " ";
        if (format == "csv") buf << "nu,absG\n";
        buf << std::scientific << std::setprecision(12);
        for (unsigned nu = lambda; nu <= nu_max; ++nu) buf << nu << sep << vals[nu - lambda] << "\n";
      }
    } else if (tr->parsed()) {
      auto t = load_transducer(tsrc);
      if (tsub == "dump") {
        transducer::write_text(buf, t);
      } else if (tsub == "reduce") {
        transducer::write_text(buf, transducer::base2_reduction(t));
      } else {
        if (tn.empty()) throw usage_error("transducer run needs an input n");
        auto r = t.run_detailed(parse_u64(tn));
        if (format == "json") {
          buf << json{{"n", parse_u64(tn)}, {"value", r.weight.str()}, {"num3", r.weight.num3()},
                      {"state", t.states()[r.state]}}
                     .dump()
              << "\n";
        } else if (format == "csv") {
          buf << "n,value,state\n" << tn << "," << r.weight.str() << "," << t.states()[r.state] << "\n";
        } else {
          buf << "value=" << r.weight.str() << " state=" << t.states()[r.state] << "\n";
        }
      }
    } else if (vf->parsed()) {
      auto checks = verify_checks(suite);
      json arr = json::array();
      if (format == "csv") buf << "check,result\n";
      for (const auto& c : checks) {
        bool pass = false;
        try {
          pass = c.run();
        } catch (const std::exception&) {
          pass = false;
        }
        if (!pass) code = failed;
        if (format == "json") {
          arr.push_back({{"check", c.name}, {"pass", pass}});
        } else if (format == "csv") {
          buf << c.name << "," << (pass ? "PASS" : "FAIL") << "\n";
        } else {
          buf << (pass ? "PASS  " : "FAIL  ") << c.name << "\n";
        }
      }
      if (format == "json") buf << arr.dump() << "\n";
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return budget;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return domain;
  }

  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << output << "'\n";
      return usage;
    }
    f << buf.str();
  } else {
    out << buf.str();
  }
  return code;
}

}  // namespace tmseq::cli
