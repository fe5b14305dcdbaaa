#include "arithdyn/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "arithdyn/adic.hpp"
#include "arithdyn/beta_core.hpp"
#include "arithdyn/beta_count.hpp"
#include "arithdyn/beta_unique.hpp"
#include "arithdyn/rotation.hpp"
#include "arithdyn/serialize.hpp"
#include "arithdyn/toral.hpp"

namespace arithdyn {

namespace {

// Digits that mpfr_float_50 can certify after the error analysis of the modules.
constexpr int max_certified_digits = 45;

struct Globals {
    int precision = print_digits;
    std::uint64_t seed = 1;
    std::string format = "plain";
    std::size_t max_depth = 4096;
};

struct Opts {
    std::string expand_base;
    std::string expand_mode = "greedy";
    std::string expand_alpha;
    std::string expand_x;
    std::size_t expand_digits = 32;
    std::string parry_base;
    std::string bclass_base;
    std::string uclass_base;
    std::string entropy_base;
    std::size_t entropy_depth = 20;
    std::string hole_delta;
    std::size_t hole_depth = 20;
    std::string word_word;
    std::string block_params;
    std::string explore_base;
    std::string explore_x;
    std::size_t explore_depth = 20;
    int explore_q = 2;
    std::string cf_alpha;
    std::size_t cf_depth = 10;
    std::string encode_alpha;
    std::string encode_x;
    std::size_t encode_digits = 20;
    int encode_model = 2;
    std::string ints_alpha = "golden";
    std::string ints_N;
    int ints_model = 2;
    std::string runique_alpha;
    std::string stats_alpha;
    std::size_t stats_n = 1000;
    std::size_t stats_samples = 1000;
    std::string adic_compactum[2]{};
    std::string adic_path[2]{};
    std::size_t adic_steps[2]{1, 1};
    std::string eval_matrix;
    std::string eval_xi = "1";
    std::string eval_window;
    std::string pre_matrix;
    std::string pre_xi = "1";
    std::string bac_matrix;
    long bac_bound = 10;
    std::string fin_base;
    std::string fin_delta = "1/100";
    std::size_t fin_samples = 100;
    std::size_t fin_depth = 50;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

class Emitter {
public:
    Emitter(std::ostream& out, const Globals& g) : out_(out), g_(g) {}

    void emit(const std::string& command, const Json& result, const std::string& plain,
              const std::optional<Table>& table = std::nullopt)
    {
        if (g_.format == "json") {
            Json j;
            j["schema_version"] = schema_version;
            j["command"] = command;
            for (auto it = result.begin(); it != result.end(); ++it)
                j[it.key()] = it.value();
            out_ << j.dump(2) << "\n";
        } else if (g_.format == "csv") {
            if (table) {
                write_row(table->header);
                for (const auto& r : table->rows)
                    write_row(r);
            } else {
                out_ << "key,value\n";
                for (auto it = result.begin(); it != result.end(); ++it)
                    write_row({it.key(), it.value().is_string() ? it.value().get<std::string>() : it.value().dump()});
            }
        } else {
            out_ << plain;
            if (!plain.empty() && plain.back() != '\n')
                out_ << "\n";
        }
    }

private:
    void write_row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string& c = cells[i];
            if (i)
                out_ << ',';
            if (c.find_first_of(",\"\n") != std::string::npos) {
                out_ << '"';
                for (char ch : c)
                    out_ << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
                out_ << '"';
            } else {
                out_ << c;
            }
        }
        out_ << "\n";
    }

    std::ostream& out_;
    const Globals& g_;
};

std::string join(const std::vector<int>& v, const std::string& sep = ",")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

// "0,1,2" or "012"
std::vector<int> parse_digits(const std::string& text)
{
    std::vector<int> d;
    if (text.find(',') != std::string::npos) {
        std::stringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                std::size_t used = 0;
                d.push_back(std::stoi(tok, &used));
                if (used != tok.size())
                    throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw std::invalid_argument("bad digit '" + tok + "'");
            }
        }
    } else {
        for (char ch : text) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("bad digit '" + std::string(1, ch) + "'");
            d.push_back(ch - '0');
        }
    }
    return d;
}

std::vector<long> parse_longs(const std::string& text)
{
    std::vector<long> v;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stol(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + tok + "'");
        }
    }
    return v;
}

Json read_json_arg(const std::string& text)
{
    std::string body = text;
    if (!body.empty() && body[0] != '{' && body[0] != '[') {
        std::ifstream in(text);
        if (!in)
            throw std::invalid_argument("cannot read '" + text + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("bad JSON: ") + e.what());
    }
}

void check_depth(std::size_t n, const Globals& g, const char* what)
{
    if (n > g.max_depth)
        throw std::invalid_argument(std::string(what) + " exceeds --max-depth " + std::to_string(g.max_depth));
}

Json verdict_json(Verdict v)
{
    return to_string(v);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Globals g;
    int code = 0;
    Emitter em(out, g);
    Opts o;
    std::function<void()> action;

    CLI::App app{"Expansions in non-integer bases, rotational numeration, adic maps and toral codings", "arithdyn"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--precision", g.precision, "significant digits printed for real numbers")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    app.add_option("--seed", g.seed, "seed for randomized commands")->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    app.add_option("--max-depth", g.max_depth, "cap on requested digit counts and depths")->capture_default_str();

    // beta ---------------------------------------------------------------
    CLI::App* beta = app.add_subcommand("beta", "greedy, lazy and intermediate expansions; Parry data");
    beta->require_subcommand(1);
    {
        CLI::App* c = beta->add_subcommand("expand", "digits of x in base beta");
        c->add_option("--base", o.expand_base, "golden | tribonacci | plastic | poly:c0,..,1 | rational | num:<decimal>")
            ->required();
        c->add_option("--mode", o.expand_mode)
            ->capture_default_str()
            ->check(CLI::IsMember({"greedy", "lazy", "intermediate"}));
        c->add_option("--alpha", o.expand_alpha, "shift of the intermediate map");
        c->add_option("--x", o.expand_x, "rational, decimal or field coordinates a0,a1,..")->required();
        c->add_option("--digits", o.expand_digits)->capture_default_str();
        c->callback([&] {
            action = [&] {
                check_depth(o.expand_digits, g, "--digits");
                Beta b = Beta::parse(o.expand_base);
                DigitSeq d;
                if (o.expand_mode == "intermediate" && o.expand_alpha.empty())
                    throw std::invalid_argument("--mode intermediate needs --alpha");
                if (b.is_algebraic()) {
                    FieldElement xv = parse_field_element(b.field(), o.expand_x);
                    if (o.expand_mode == "greedy")
                        d = greedy_expand(xv, b, o.expand_digits);
                    else if (o.expand_mode == "lazy")
                        d = lazy_expand(xv, b, o.expand_digits);
                    else
                        d = intermediate_expand(xv, b, parse_field_element(b.field(), o.expand_alpha), o.expand_digits);
                } else {
                    Real xv = to_real(parse_rational(o.expand_x));
                    if (o.expand_mode == "greedy")
                        d = greedy_expand(xv, b, o.expand_digits);
                    else if (o.expand_mode == "lazy")
                        d = lazy_expand(xv, b, o.expand_digits);
                    else
                        d = intermediate_expand(xv, b, to_real(parse_rational(o.expand_alpha)), o.expand_digits);
                }
                Json j;
                j["base"] = b.describe();
                j["mode"] = o.expand_mode;
                j["digits"] = d.render(o.expand_digits);
                j["notation"] = d.to_string();
                j["sequence"] = to_json(d);
                em.emit("beta expand", j, d.render(o.expand_digits));
            };
        });
    }
    {
        CLI::App* c = beta->add_subcommand("parry", "expansions of 1: greedy a' and quasi-greedy a");
        c->add_option("--base", o.parry_base)->required();
        c->callback([&] {
            action = [&] {
                Beta b = Beta::parse(o.parry_base);
                ParryData p = expansion_of_one(b);
                Json j;
                j["base"] = b.describe();
                j["a_prime"] = to_json(p.a_prime);
                j["a"] = to_json(p.a);
                j["a_prime_notation"] = p.a_prime.to_string();
                j["a_notation"] = p.a.to_string();
                j["exact"] = p.exact;
                j["truncated"] = p.truncated;
                em.emit("beta parry", j, "a' = " + p.a_prime.to_string() + "\na = " + p.a.to_string());
            };
        });
    }
    {
        CLI::App* c = beta->add_subcommand("classify", "SFT / sofic / not sofic");
        c->add_option("--base", o.bclass_base)->required();
        c->callback([&] {
            action = [&] {
                Beta b = Beta::parse(o.bclass_base);
                CompactumReport r = classify_compactum(b);
                Json j;
                j["base"] = b.describe();
                j["category"] = to_string(r.category);
                j["pisot"] = r.conjugates.pisot;
                j["perron"] = r.conjugates.perron;
                j["algebraic_integer"] = r.conjugates.algebraic_integer;
                j["a_notation"] = r.parry.a.to_string();
                em.emit("beta classify", j, to_string(r.category));
            };
        });
    }

    // unique ---------------------------------------------------------------
    CLI::App* uniq = app.add_subcommand("unique", "unique expansions");
    uniq->require_subcommand(1);
    {
        CLI::App* c = uniq->add_subcommand("classify", "size of the set of unique expansions for 1 < beta < 2");
        c->add_option("--base", o.uclass_base)->required();
        c->callback([&] {
            action = [&] {
                UniquenessVerdict v = classify_unique_set(Beta::parse(o.uclass_base).value());
                Json j;
                j["category"] = to_string(v.category);
                j["reason"] = v.reason;
                em.emit("unique classify", j, to_string(v.category));
            };
        });
    }
    {
        CLI::App* c = uniq->add_subcommand("entropy", "number of unique words of each length");
        c->add_option("--base", o.entropy_base)->required();
        c->add_option("--depth", o.entropy_depth)->capture_default_str()->check(CLI::Range(1, 63));
        c->callback([&] {
            action = [&] {
                Beta b = Beta::parse(o.entropy_base);
                Table t{{"depth", "count", "log_count_per_n"}, {}};
                Json rows = Json::array();
                std::string plain;
                for (std::size_t n = 1; n <= o.entropy_depth; ++n) {
                    std::uint64_t cnt = unique_word_count(b, n);
                    double h = cnt ? std::log(static_cast<double>(cnt)) / n : 0.0;
                    std::ostringstream hs;
                    hs.precision(std::min(g.precision, 17));
                    hs << h;
                    t.rows.push_back({std::to_string(n), std::to_string(cnt), hs.str()});
                    rows.push_back({{"depth", n}, {"count", cnt}, {"log_count_per_n", hs.str()}});
                    plain += std::to_string(n) + " " + std::to_string(cnt) + " " + hs.str() + "\n";
                }
                em.emit("unique entropy", Json{{"base", b.describe()}, {"rows", rows}}, plain, t);
            };
        });
    }
    {
        CLI::App* c = uniq->add_subcommand("hole", "words of the doubling map avoiding the hole (delta, 1 - delta)");
        c->add_option("--delta", o.hole_delta)->required();
        c->add_option("--depth", o.hole_depth)->capture_default_str()->check(CLI::Range(1, 63));
        c->callback([&] {
            action = [&] {
                Rational dl = parse_rational(o.hole_delta);
                Table t{{"depth", "count", "log_count_per_n"}, {}};
                Json rows = Json::array();
                std::string plain;
                for (std::size_t n = 1; n <= o.hole_depth; ++n) {
                    std::uint64_t cnt = doubling_hole_survivor_count(dl, n);
                    double h = cnt ? std::log(static_cast<double>(cnt)) / n : 0.0;
                    std::ostringstream hs;
                    hs.precision(std::min(g.precision, 17));
                    hs << h;
                    t.rows.push_back({std::to_string(n), std::to_string(cnt), hs.str()});
                    rows.push_back({{"depth", n}, {"count", cnt}, {"log_count_per_n", hs.str()}});
                    plain += std::to_string(n) + " " + std::to_string(cnt) + " " + hs.str() + "\n";
                }
                em.emit("unique hole", Json{{"delta", dl.get_str()}, {"rows", rows}}, plain, t);
            };
        });
    }

    // count ---------------------------------------------------------------
    CLI::App* count = app.add_subcommand("count", "number of representations in base G and beyond");
    count->require_subcommand(1);
    {
        CLI::App* c = count->add_subcommand("word", "0-1 words of the same length and value in base G");
        c->add_option("bits", o.word_word)->required();
        c->callback([&] {
            action = [&] {
                Integer n = count_equivalent_words(o.word_word);
                em.emit("count word", Json{{"word", o.word_word}, {"count", to_json(n)}}, n.get_str());
            };
        });
    }
    {
        CLI::App* c = count->add_subcommand("block", "size of the class of the block B(a1,...,ar)");
        c->add_option("--params", o.block_params)->required();
        c->callback([&] {
            action = [&] {
                Block b(parse_longs(o.block_params));
                Integer n = count_block(b);
                Json j{{"params", b.params()}, {"block", b.render()}, {"count", to_json(n)}};
                em.emit("count block", j, n.get_str());
            };
        });
    }
    {
        CLI::App* c = count->add_subcommand("explore", "tree of all digit choices");
        c->add_option("--base", o.explore_base)->required();
        c->add_option("--x", o.explore_x)->required();
        c->add_option("--depth", o.explore_depth)->capture_default_str();
        c->add_option("--alphabet", o.explore_q, "digits 0..q-1")->capture_default_str()->check(CLI::Range(2, 64));
        c->callback([&] {
            action = [&] {
                Beta b = Beta::parse(o.explore_base);
                if (!b.is_algebraic())
                    throw std::invalid_argument("exploration needs an exact base");
                BranchSummary s = branching_explore(parse_field_element(b.field(), o.explore_x), b, o.explore_q, o.explore_depth);
                Json j;
                j["paths"] = s.paths;
                j["choice_nodes"] = s.choice_nodes;
                j["distinct_prefixes"] = s.distinct_prefixes;
                j["first_choice_depth"] = s.first_choice_depth;
                j["per_depth"] = s.per_depth;
                Table t{{"depth", "prefixes"}, {}};
                for (std::size_t i = 0; i < s.per_depth.size(); ++i)
                    t.rows.push_back({std::to_string(i + 1), std::to_string(s.per_depth[i])});
                std::string plain = "paths " + std::to_string(s.paths) + "\nchoice_nodes " +
                                    std::to_string(s.choice_nodes) + "\ndistinct_prefixes " +
                                    std::to_string(s.distinct_prefixes) + "\nfirst_choice_depth " +
                                    std::to_string(s.first_choice_depth);
                em.emit("count explore", j, plain, t);
            };
        });
    }

    // rotate ---------------------------------------------------------------
    CLI::App* rot = app.add_subcommand("rotate", "continued fractions and Ostrowski numeration");
    rot->require_subcommand(1);
    const char* alpha_help = "golden | sqrt:d:a:b | cf:2,(1,3) | num:<decimal>";
    {
        CLI::App* c = rot->add_subcommand("cf", "quotients, convergents and residues");
        c->add_option("--alpha", o.cf_alpha, alpha_help)->required();
        c->add_option("--depth", o.cf_depth)->capture_default_str();
        c->callback([&] {
            action = [&] {
                check_depth(o.cf_depth, g, "--depth");
                ContinuedFraction cf = ContinuedFraction::parse(o.cf_alpha);
                Table t{{"n", "a", "p", "q", "alpha_n"}, {}};
                Json rows = Json::array();
                std::string plain = cf.describe() + "\n";
                for (std::size_t n = 1; n <= o.cf_depth; ++n) {
                    std::string res = cf.has_residues() ? format_real(cf.residue(n), g.precision) : "";
                    std::vector<std::string> row{std::to_string(n), std::to_string(cf.a(n)), cf.p(n).get_str(),
                                                 cf.q(n).get_str(), res};
                    rows.push_back({{"n", n}, {"a", cf.a(n)}, {"p", to_json(cf.p(n))}, {"q", to_json(cf.q(n))},
                                    {"alpha_n", res}});
                    plain += row[0] + " " + row[1] + " " + row[2] + " " + row[3];
                    plain += (res.empty() ? "" : " " + res) + "\n";
                    t.rows.push_back(std::move(row));
                }
                Json j{{"alpha", cf.describe()}, {"periodic", cf.is_periodic()}, {"rows", rows}};
                em.emit("rotate cf", j, plain, t);
            };
        });
    }
    {
        CLI::App* c = rot->add_subcommand("encode", "digits of x in [0,1)");
        c->add_option("--alpha", o.encode_alpha, alpha_help)->required();
        c->add_option("--x", o.encode_x)->required();
        c->add_option("--digits", o.encode_digits)->capture_default_str();
        c->add_option("--model", o.encode_model)->capture_default_str()->check(CLI::IsMember({1, 2}));
        c->callback([&] {
            action = [&] {
                check_depth(o.encode_digits, g, "--digits");
                ContinuedFraction cf = ContinuedFraction::parse(o.encode_alpha);
                Rational xr = parse_rational(o.encode_x);
                DigitSeq d;
                Approx back;
                if (o.encode_model == 2) {
                    d = cf.is_exact() ? ostrowski_encode(FieldElement(cf.alpha_exact().field(), xr), cf, o.encode_digits)
                                      : ostrowski_encode(to_real(xr), cf, o.encode_digits);
                    back = psi2(DigitSeq::finite(d.take(o.encode_digits), 1), cf, o.encode_digits);
                } else {
                    d = rot_encode1(to_real(xr), cf, o.encode_digits);
                    back = psi1(DigitSeq::finite(d.take(o.encode_digits), 1), cf, o.encode_digits);
                }
                std::vector<int> shown = d.take(o.encode_digits);
                Json j;
                j["model"] = o.encode_model;
                j["digits"] = shown;
                j["value"] = to_json(back, g.precision);
                em.emit("rotate encode", j, join(shown));
            };
        });
    }
    {
        CLI::App* c = rot->add_subcommand("integers", "Ostrowski digits of an integer");
        c->add_option("--alpha", o.ints_alpha, alpha_help)->capture_default_str();
        c->add_option("--N", o.ints_N)->required();
        c->add_option("--model", o.ints_model, "1: N = 1 + sum x_k q_k (N >= 1); 2: N = sum (-1)^k x_k q_k")
            ->capture_default_str()
            ->check(CLI::IsMember({1, 2}));
        c->callback([&] {
            action = [&] {
                ContinuedFraction cf = ContinuedFraction::parse(o.ints_alpha);
                Integer n;
                try {
                    n = Integer(o.ints_N);
                } catch (const std::invalid_argument&) {
                    throw std::invalid_argument("bad integer '" + o.ints_N + "'");
                }
                DigitSeq d = o.ints_model == 1 ? integer_encode1(n, cf) : integer_encode2(n, cf);
                std::vector<int> shown = d.take(d.known_length());
                Integer check = o.ints_model == 1 ? integer_value1(shown, cf) : integer_value2(shown, cf);
                Json j{{"model", o.ints_model}, {"N", to_json(n)}, {"digits", shown}, {"value", to_json(check)}};
                em.emit("rotate integers", j, join(shown));
            };
        });
    }
    {
        CLI::App* c = rot->add_subcommand("unique", "points of the circle with a unique expansion");
        c->add_option("--alpha", o.runique_alpha, alpha_help)->required();
        c->callback([&] {
            action = [&] {
                RotUniqueReport r = unique_rotational_analysis(ContinuedFraction::parse(o.runique_alpha));
                Json j;
                j["empty"] = verdict_json(r.empty);
                j["measure_zero"] = verdict_json(r.measure_zero);
                j["cardinality"] = to_string(r.cardinality);
                j["dim_positive"] = verdict_json(r.dim_positive);
                j["n0"] = r.n0 ? Json(*r.n0) : Json(nullptr);
                j["mu_K_alpha"] = r.mu_K_alpha ? to_json(*r.mu_K_alpha, g.precision) : Json(nullptr);
                std::string plain = "empty " + to_string(r.empty) + "\nmeasure_zero " + to_string(r.measure_zero) +
                                    "\ncardinality " + to_string(r.cardinality) + "\ndim_positive " +
                                    to_string(r.dim_positive);
                em.emit("rotate unique", j, plain);
            };
        });
    }
    {
        CLI::App* c = rot->add_subcommand("stats", "moments of sampled digit sums under the Markov measure");
        c->add_option("--alpha", o.stats_alpha, alpha_help)->required();
        c->add_option("--n", o.stats_n, "digits per sample")->capture_default_str();
        c->add_option("--samples", o.stats_samples)->capture_default_str();
        c->callback([&] {
            action = [&] {
                check_depth(o.stats_n, g, "--n");
                if (o.stats_samples < 2)
                    throw std::invalid_argument("--samples must be at least 2");
                RotMeasure m(ContinuedFraction::parse(o.stats_alpha));
                DigitStatistics s = digit_statistics(sample_digit_sums(m, o.stats_n, o.stats_samples, g.seed));
                Json j;
                j["seed"] = g.seed;
                j["n"] = o.stats_n;
                j["samples"] = o.stats_samples;
                j["mean"] = s.mean;
                j["variance"] = s.variance;
                j["skewness"] = s.skewness;
                j["excess_kurtosis"] = s.excess_kurtosis;
                j["ks_distance"] = s.ks_distance;
                std::ostringstream p;
                p.precision(std::min(g.precision, 17));
                p << "seed " << g.seed << "\nmean " << s.mean << "\nvariance " << s.variance << "\nskewness " << s.skewness
                  << "\nexcess_kurtosis " << s.excess_kurtosis << "\nks_distance " << s.ks_distance;
                em.emit("rotate stats", j, p.str());
            };
        });
    }

    // adic ---------------------------------------------------------------
    CLI::App* adic = app.add_subcommand("adic", "adic transformation on Markov compacta");
    adic->require_subcommand(1);
    for (const char* name : {"succ", "pred"}) {
        const int k = std::string(name) == "succ" ? 0 : 1;
        CLI::App* c = adic->add_subcommand(name, k == 0 ? "successor paths" : "predecessor paths");
        c->add_option("--compactum", o.adic_compactum[k], "inline JSON or a file")->required();
        c->add_option("--path", o.adic_path[k], "digits, 0,1,2 or 012, level 0 first")->required();
        c->add_option("--steps", o.adic_steps[k])->capture_default_str();
        c->callback([&, k] {
            action = [&, k] {
                check_depth(o.adic_steps[k], g, "--steps");
                MarkovCompactum mc = compactum_from_json(read_json_arg(o.adic_compactum[k]));
                std::vector<int> p = parse_digits(o.adic_path[k]);
                if (p.size() != mc.depth())
                    throw std::invalid_argument("path has " + std::to_string(p.size()) + " digits, compactum depth is " +
                                                std::to_string(mc.depth()));
                mc.check_path(p);
                Json paths = Json::array();
                std::string plain;
                Json end = nullptr;
                for (std::size_t i = 0; i < o.adic_steps[k]; ++i) {
                    auto nx = k == 0 ? successor(p, mc) : predecessor(p, mc);
                    if (!nx) {
                        end = k == 0 ? "maximal" : "minimal";
                        plain += end.get<std::string>() + "\n";
                        break;
                    }
                    p = *nx;
                    paths.push_back(p);
                    plain += join(p) + "\n";
                }
                em.emit(k == 0 ? "adic succ" : "adic pred", Json{{"paths", paths}, {"terminated", end}}, plain);
            };
        });
    }

    // toral ---------------------------------------------------------------
    CLI::App* toral = app.add_subcommand("toral", "arithmetic codings of toral automorphisms");
    toral->require_subcommand(1);
    const char* matrix_help = "row-major CSV, e.g. 1,1,1,0 or 1,1;1,0";
    {
        CLI::App* c = toral->add_subcommand("eval", "sum of eps_n T^{-n} t over a finite window");
        c->add_option("--matrix", o.eval_matrix, matrix_help)->required();
        c->add_option("--xi", o.eval_xi, "element of Q(beta): rational or coordinates a0,a1,..")->capture_default_str();
        c->add_option("--window", o.eval_window, "digits@offset, first digit at index offset")->required();
        c->callback([&] {
            action = [&] {
                ToralAutomorphism a(parse_matrix(o.eval_matrix));
                HomoclinicPoint t(a, parse_field_element(a.field(), o.eval_xi));
                TwoSidedSeq s = TwoSidedSeq::parse(o.eval_window);
                ToralPoint p = homoclinic_eval(t, s);
                Json pts = Json::array(), exact = Json::array();
                std::string plain;
                for (std::size_t i = 0; i < p.value.size(); ++i) {
                    pts.push_back(to_json(Approx{p.value[i], p.error_bound}, g.precision));
                    exact.push_back(p.exact[i].to_string());
                    plain += (i ? " " : "") + format_real(p.value[i], g.precision);
                }
                Json j;
                j["window"] = s.to_string();
                j["admissible"] = two_sided_admissible(s, Beta::algebraic(a.field()));
                j["point"] = pts;
                j["exact"] = exact;
                em.emit("toral eval", j, plain);
            };
        });
    }
    {
        CLI::App* c = toral->add_subcommand("preimages", "a.e. number of preimages |D N(xi)|");
        c->add_option("--matrix", o.pre_matrix, matrix_help)->required();
        c->add_option("--xi", o.pre_xi)->capture_default_str();
        c->callback([&] {
            action = [&] {
                ToralAutomorphism a(parse_matrix(o.pre_matrix));
                Integer k = preimage_count(HomoclinicPoint(a, parse_field_element(a.field(), o.pre_xi)));
                em.emit("toral preimages", Json{{"preimages", to_json(k)}}, k.get_str());
            };
        });
    }
    {
        CLI::App* c = toral->add_subcommand("bac", "search n with f_M(n) = +-1");
        c->add_option("--matrix", o.bac_matrix, matrix_help)->required();
        c->add_option("--bound", o.bac_bound)->capture_default_str()->check(CLI::Range(1L, 100000L));
        c->callback([&] {
            action = [&] {
                IntMatrix m = parse_matrix(o.bac_matrix);
                ToralAutomorphism a(m);   // validates det = +-1
                BacResult r = bac_search(m, o.bac_bound);
                Json n = Json::array();
                std::string ns;
                for (std::size_t i = 0; i < r.n.size(); ++i) {
                    n.push_back(to_json(r.n[i]));
                    ns += (i ? "," : "") + r.n[i].get_str();
                }
                Json j;
                j["found"] = r.found;
                j["n"] = n;
                j["abs_f"] = to_json(r.value);
                j["scanned"] = r.scanned;
                if (!r.found)
                    j["note"] = "NotFoundWithinBound; abs_f is the smallest nonzero value in the box, not a proven minimum";
                std::string plain = r.found ? "found " + ns + " |f| = 1"
                                            : "NotFoundWithinBound min |f| = " + r.value.get_str() + (ns.empty() ? "" : " at " + ns);
                em.emit("toral bac", j, plain);
                if (!r.found)
                    code = 2;
            };
        });
    }
    {
        CLI::App* c = toral->add_subcommand("finitary", "heuristic evidence for the weak finiteness property");
        c->add_option("--base", o.fin_base)->required();
        c->add_option("--samples", o.fin_samples)->capture_default_str();
        c->add_option("--delta", o.fin_delta)->capture_default_str();
        c->add_option("--depth", o.fin_depth)->capture_default_str();
        c->callback([&] {
            action = [&] {
                check_depth(o.fin_depth, g, "--depth");
                FinitaryReport r = finitary_probe(Beta::parse(o.fin_base), o.fin_samples, parse_rational(o.fin_delta), o.fin_depth, g.seed);
                Json j{{"samples", r.samples}, {"successes", r.successes}, {"unknown", r.unknown},
                       {"success_rate", r.success_rate}, {"seed", g.seed}};
                std::ostringstream p;
                p << "success_rate " << r.success_rate << "\nunknown " << r.unknown;
                em.emit("toral finitary", j, p.str());
            };
        });
    }

    try {
        app.parse(argc, argv);
        if (g.precision > max_certified_digits)
            throw precision_error("--precision " + std::to_string(g.precision) + " exceeds the " +
                                  std::to_string(max_certified_digits) + " certified digits");
        if (action)
            action();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    } catch (const precision_error& e) {
        err << "precision: " << e.what() << "\n";
        return 3;
    } catch (const unresolved_error& e) {
        err << "unresolved: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"arithdyn"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace arithdyn
