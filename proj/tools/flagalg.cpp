#include <CLI11.hpp>

#include <flagalg.hpp>
#include <flagalg/selftest.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace fa = flagalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

struct Source {
  std::string file;
  std::string gen;
};

struct Options {
  Source source;
  unsigned threads = 0;
  std::size_t max_flags = 0;
  int n = 2;
  bool count = false;
  int k = 2;
  std::string side = "left";
  std::string format;
  std::string kind = "second";
  std::string index;
  int all_k = -1;
  bool regions = false;
  int interpolate = -1;
  std::string method = "both";
  bool terms = false;
  int criterion = 0;
};

const char* hint(fa::Errc e) {
  using fa::Errc;
  switch (e) {
    case Errc::ParseError: return "check the poset file: {\"elements\": [...], \"covers\": [[i, j], ...]}";
    case Errc::CycleDetected: return "the cover relation must be acyclic";
    case Errc::NotGraded: return "every cover must raise the rank by exactly one";
    case Errc::DuplicateCover: return "list each cover pair once";
    case Errc::ElementOutOfRange: return "cover indices refer to positions in \"elements\"";
    case Errc::IndexOutOfRange: return "indices must be weakly increasing and at most the rank of the poset";
    case Errc::InvalidParams: return "see --help for the generator grammar and parameter ranges";
    case Errc::SizeLimitExceeded: return "use a smaller generator";
    case Errc::EnumerationLimitExceeded: return "raise --max-flags or FLAGALG_MAX_FLAGS, or lower the arity";
    case Errc::CapExceeded: return "the index family is capped; use a smaller k";
    case Errc::RankTooSmall: return "the coefficient needs 1 <= k < rk/2";
    case Errc::NotBoundedBelow: return "the poset needs a unique minimal element";
    case Errc::NotBounded: return "the poset needs unique minimal and maximal elements";
    case Errc::NotLattice: return "use --method recursive for non-lattices";
    default: return nullptr;
  }
}

int exit_code(fa::Errc e) {
  using fa::Errc;
  switch (e) {
    case Errc::ParseError:
    case Errc::CycleDetected:
    case Errc::NotGraded:
    case Errc::DuplicateCover:
    case Errc::InvalidParams:
    case Errc::ElementOutOfRange:
    case Errc::IndexOutOfRange:
      return kExitUsage;
    default:
      return kExitComputation;
  }
}

fa::Limits limits_of(const Options& o) {
  fa::Limits l = fa::default_limits();
  if (o.max_flags > 0) l.max_flags = o.max_flags;
  return l;
}

fa::Poset load(const Options& o) {
  const auto l = limits_of(o);
  if (!o.source.file.empty()) return fa::read_poset_file(o.source.file, l);
  return fa::generate(o.source.gen, l);
}

void print_json(const fa::Json& j) { std::cout << j.dump(2) << "\n"; }

std::string format_or(const Options& o, const char* def) { return o.format.empty() ? def : o.format; }

int cmd_poset(const Options& o) {
  const auto format = format_or(o, "text");
  const auto p = load(o);
  if (format == "json") {
    print_json(fa::poset_to_json(p));
    return kExitOk;
  }
  const auto d = fa::validate(p);
  std::cout << "name: " << p.name() << "\n"
            << "elements: " << p.size() << "\n"
            << "covers: " << p.covers().size() << "\n"
            << "rank: " << p.top_rank() << "\n"
            << "levels:";
  for (const auto& lv : p.levels()) std::cout << " " << lv.size();
  std::cout << "\n"
            << std::boolalpha << "graded: " << d.graded << "\n"
            << "bounded_below: " << d.bounded_below << "\n"
            << "bounded_above: " << d.bounded_above << "\n"
            << "lattice: " << d.lattice << "\n";
  return kExitOk;
}

int cmd_flags(const Options& o) {
  const auto p = load(o);
  const auto t = fa::FlagTable::build(p, o.n, limits_of(o));
  if (o.count) {
    std::cout << t->size() << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < t->size(); ++i) std::cout << fa::flag_string(p, t->flag(i)) << "\n";
  return kExitOk;
}

int cmd_mobius(const Options& o) {
  const auto format = format_or(o, "text");
  if (o.side != "left" && o.side != "right") fa::fail(fa::Errc::InvalidParams, "--side must be left or right");
  const auto p = load(o);
  const auto t = fa::FlagTable::build(p, o.k, limits_of(o));
  const auto mu = o.side == "left" ? fa::mobius_left(t) : fa::mobius_right(t);
  if (format == "json")
    print_json(fa::function_to_json(mu));
  else
    std::cout << fa::dump_function(mu);
  return kExitOk;
}

fa::MultiIndex parse_index(const std::string& text) {
  fa::MultiIndex out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto part = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fa::fail(fa::Errc::ParseError, "bad index list \"" + text + "\"");
    }
    pos = comma + 1;
  }
  return out;
}

fa::Integer whitney_value(const fa::Poset& p, const std::string& kind, const fa::MultiIndex& idx, const fa::Limits& l) {
  return kind == "first" ? fa::whitney_first(p, idx, l) : fa::whitney_second(p, idx);
}

int cmd_whitney(const Options& o) {
  if (o.kind != "first" && o.kind != "second") fa::fail(fa::Errc::InvalidParams, "--kind must be first or second");
  const auto p = load(o);
  const auto l = limits_of(o);
  if (o.regions) {
    const auto [a, b] = fa::region_counts(p);
    std::cout << "a = " << a << "\nb = " << b << "\n";
    return kExitOk;
  }
  if (o.interpolate >= 0) {
    std::cout << fa::whitney_first_via_interpolation(p, o.interpolate) << "\n";
    return kExitOk;
  }
  if (o.all_k >= 0) {
    fa::MultiIndex idx(static_cast<std::size_t>(o.all_k), 0);
    for (;;) {
      std::cout << (o.kind == "first" ? "w_{" : "W_{") << fa::detail::index_string(idx) << "} = "
                << whitney_value(p, o.kind, idx, l) << "\n";
      // next weakly increasing tuple
      int j = o.all_k - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] == p.top_rank()) --j;
      if (j < 0) break;
      const int v = idx[static_cast<std::size_t>(j)] + 1;
      for (auto i = static_cast<std::size_t>(j); i < idx.size(); ++i) idx[i] = v;
    }
    return kExitOk;
  }
  std::cout << whitney_value(p, o.kind, parse_index(o.index), l) << "\n";
  return kExitOk;
}

int cmd_klindex(const Options& o) {
  const auto format = format_or(o, "table1");
  const auto l = limits_of(o);
  if (format == "json")
    print_json(fa::index_family_to_json(o.k, l));
  else if (format == "latex")
    std::cout << fa::render_latex(o.k, l) << "\n";
  else
    std::cout << fa::render_table(o.k, l) << "\n";
  return kExitOk;
}

std::string poly_text(const fa::Polynomial& p, const std::string& format) {
  if (format == "latex") return p.to_latex();
  return p.to_string();
}

int cmd_kl(const Options& o) {
  const auto format = format_or(o, "text");
  if (o.method != "closed" && o.method != "recursive" && o.method != "both") {
    fa::fail(fa::Errc::InvalidParams, "--method must be closed, recursive or both");
  }
  const auto p = load(o);
  const auto l = limits_of(o);
  std::optional<fa::Polynomial> closed, recursive;
  if (o.method != "recursive") closed = fa::kl_closed(p, l);
  if (o.method != "closed") recursive = fa::kl_recursive(p);
  const bool mismatch = closed && recursive && *closed != *recursive;

  if (format == "json") {
    fa::Json j;
    j["schema"] = fa::kSchemaVersion;
    j["type"] = "kl";
    if (closed) j["closed"] = fa::polynomial_to_json(*closed);
    if (recursive) j["recursive"] = fa::polynomial_to_json(*recursive);
    if (closed && recursive) j["agree"] = !mismatch;
    print_json(j);
  } else {
    if (closed) std::cout << (recursive ? "closed: " : "") << poly_text(*closed, format) << "\n";
    if (recursive) std::cout << (closed ? "recursive: " : "") << poly_text(*recursive, format) << "\n";
  }
  if (o.terms && closed) {
    for (int k = 1; 2 * k < p.top_rank(); ++k) {
      std::cout << "coefficient " << k << ":\n";
      for (const auto& v : fa::kl_coefficient_terms(p, k, l)) {
        std::cout << "  " << (v.term->sign() > 0 ? "+" : "-") << " (W_{" << fa::detail::index_string(v.partner) << "} - W_{"
                  << fa::detail::index_string(v.index) << "}) = " << (v.term->sign() > 0 ? "+" : "-") << " ("
                  << v.w_partner << " - " << v.w_index << ") -> " << v.contribution << "\n";
      }
    }
  }
  if (mismatch) {
    std::cerr << "error: closed and recursive KL polynomials disagree\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_charpoly(const Options& o) {
  const auto format = format_or(o, "text");
  const auto p = load(o);
  const auto chi = fa::char_poly_k(p, o.k, limits_of(o));
  if (format == "json")
    print_json(fa::multipoly_to_json(chi));
  else if (format == "latex")
    std::cout << chi.to_latex() << "\n";
  else
    std::cout << chi.to_string() << "\n";
  return kExitOk;
}

int cmd_selftest(const Options& o) {
  if (o.criterion < 0 || o.criterion > fa::selftest::kCriteria) {
    fa::fail(fa::Errc::InvalidParams, "--criterion must be in 1.." + std::to_string(fa::selftest::kCriteria));
  }
  bool ok = true;
  for (int id = 1; id <= fa::selftest::kCriteria; ++id) {
    if (o.criterion != 0 && id != o.criterion) continue;
    const auto r = fa::selftest::run(id);
    std::cout << fa::selftest::format(r) << "\n";
    ok = ok && r.status != fa::selftest::Status::Fail;
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial flag incidence algebras on finite graded posets."};
  app.require_subcommand(1);
  app.footer(
      "Generators (--gen SPEC):\n"
      "  figure1            the rank-2 poset 0 < a, b, c < 1\n"
      "  boolean:N          subsets of an N-set\n"
      "  chain:M            0 < 1 < ... < M\n"
      "  partition:N        set partitions of [N] under refinement\n"
      "  uniform:M,N        flats of the uniform matroid of rank M on N elements\n"
      "  random:SEED[,MAX]  a random graded bounded poset with at most MAX elements\n"
      "  product:(A,B)      the product of two generated posets\n"
      "Poset files: {\"elements\": [labels], \"covers\": [[i, j], ...], \"name\": optional}.\n"
      "FLAGALG_MAX_FLAGS overrides the flag enumeration cap.\n"
      "Exit status: 0 success, 1 verification mismatch, 2 usage or input error, 3 computation error.");

  Options o;
  app.add_option("--threads", o.threads, "worker threads (default: available parallelism)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-flags", o.max_flags, "flag enumeration cap")->check(CLI::PositiveNumber);
  app.fallthrough();

  auto with_source = [&](CLI::App* sub) {
    auto* file = sub->add_option("--poset", o.source.file, "poset JSON file")->check(CLI::ExistingFile);
    auto* gen = sub->add_option("--gen", o.source.gen, "generator spec, e.g. boolean:3");
    file->excludes(gen);
    gen->excludes(file);
    sub->callback([sub, file, gen] {
      if (file->count() + gen->count() != 1) throw CLI::ValidationError(sub->get_name(), "give exactly one of --poset or --gen");
    });
  };
  auto format_option = [&](CLI::App* sub, const std::string& def, std::vector<std::string> choices) {
    sub->add_option("--format", o.format, "output format (default " + def + ")")->check(CLI::IsMember(choices));
  };

  auto* poset = app.add_subcommand("poset", "summarize or canonicalize a poset");
  with_source(poset);
  format_option(poset, "text", {"text", "json"});

  auto* fl = app.add_subcommand("flags", "list the flags X_1 <= ... <= X_n");
  with_source(fl);
  fl->add_option("--n", o.n, "flag length")->check(CLI::PositiveNumber)->capture_default_str();
  fl->add_flag("--count", o.count, "print only the number of flags");

  auto* mob = app.add_subcommand("mobius", "Mobius function on k-flags");
  with_source(mob);
  mob->add_option("--k", o.k, "flag length (>= 2)")->capture_default_str();
  mob->add_option("--side", o.side, "left (mu * zeta = delta) or right (zeta * mu = delta)")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  format_option(mob, "text", {"text", "json"});

  auto* wh = app.add_subcommand("whitney", "multi-indexed Whitney numbers");
  with_source(wh);
  wh->add_option("--kind", o.kind, "first or second")->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  auto* idx = wh->add_option("--index", o.index, "comma-separated rank levels, e.g. 1,3,4");
  auto* all = wh->add_option("--all-k", o.all_k, "tabulate every index of this length")->check(CLI::NonNegativeNumber);
  auto* reg = wh->add_flag("--regions", o.regions, "region counts a and b");
  auto* interp = wh->add_option("--interpolate", o.interpolate, "w_{0,n} from second-kind numbers")
                     ->check(CLI::PositiveNumber);
  idx->excludes(all)->excludes(reg)->excludes(interp);
  all->excludes(reg)->excludes(interp);
  reg->excludes(interp);

  auto* ki = app.add_subcommand("klindex", "the index family S_k of the closed KL formula");
  ki->add_option("--k", o.k, "coefficient index")->required();
  format_option(ki, "table1", {"table1", "latex", "json"});

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomial");
  with_source(kl);
  kl->add_option("--method", o.method, "closed, recursive or both")
      ->check(CLI::IsMember({"closed", "recursive", "both"}))
      ->capture_default_str();
  kl->add_flag("--terms", o.terms, "print each term of the closed formula");
  format_option(kl, "text", {"text", "json", "latex"});

  auto* cp = app.add_subcommand("charpoly", "k-variable characteristic polynomial");
  with_source(cp);
  cp->add_option("--k", o.k, "number of variables")->check(CLI::PositiveNumber)->capture_default_str();
  format_option(cp, "text", {"text", "json", "latex"});

  auto* st = app.add_subcommand("selftest", "run the acceptance checks");
  st->add_option("--criterion", o.criterion, "run one criterion only")->check(CLI::Range(1, fa::selftest::kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (o.threads > 0) fa::set_thread_count(o.threads);
  try {
    if (app.got_subcommand(poset)) return cmd_poset(o);
    if (app.got_subcommand(fl)) return cmd_flags(o);
    if (app.got_subcommand(mob)) return cmd_mobius(o);
    if (app.got_subcommand(wh)) return cmd_whitney(o);
    if (app.got_subcommand(ki)) return cmd_klindex(o);
    if (app.got_subcommand(kl)) return cmd_kl(o);
    if (app.got_subcommand(cp)) return cmd_charpoly(o);
    if (app.got_subcommand(st)) return cmd_selftest(o);
  } catch (const fa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (const char* h = hint(e.code())) std::cerr << "hint: " << h << "\n";
    return exit_code(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\nhint: use a smaller input or lower --max-flags\n";
    return kExitComputation;
  }
  return kExitUsage;
}
