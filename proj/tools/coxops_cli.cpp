#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coxops/coxops.hpp"

using namespace coxops;

namespace {

constexpr int kGuardL = 8;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadArgs = 2;

json read_json(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw invalid_argument("cannot open " + path);
        buf << in.rdbuf();
    }
    try {
        return json::parse(buf.str());
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

void guard(int l, bool force) {
    if (l > kGuardL && !force)
        throw invalid_argument("l = " + std::to_string(l) + " exceeds " + std::to_string(kGuardL) +
                               "; pass --force to run anyway");
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string render_op(const DiffOperator& op) {
    if (op.is_zero()) return "0";
    std::string s;
    for (const auto& [alpha, f] : op.terms()) {
        if (!s.empty()) s += " + ";
        std::string d;
        for (int i = 0; i < op.l(); ++i) {
            if (alpha[i] == 0) continue;
            if (!d.empty()) d += "*";
            d += "d" + std::to_string(i + 1);
            if (alpha[i] > 1) d += "^" + std::to_string(alpha[i]);
        }
        s += "(" + render(f) + ")*" + d;
    }
    return s;
}

Partition parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            parts.push_back(v);
        } catch (const std::exception&) {
            throw parse_error("partition entry '" + item + "' is not an integer");
        }
    }
    if (parts.empty()) throw parse_error("empty partition");
    return Partition(parts);
}

json certificate_summary(const Certificate& c, const std::vector<int>& exps) {
    json j = {{"is_basis", c.is_basis}, {"t_m", c.t_m}, {"exponents", exps}, {"method", c.method}};
    j["c"] = c.c ? json(to_string(*c.c)) : json(nullptr);
    return j;
}

struct Common {
    std::string kind = "A";
    int l = 0;
    int m = 2;
    bool force = false;
    bool json_out = false;
};

int cmd_basis(const Common& o, bool certify, const std::string& json_path, bool show_ops) {
    if (o.m != 2) throw invalid_argument("bases are built for m = 2 only");
    Kind kind = parse_kind(o.kind);
    guard(o.l, o.force);
    BuildOptions opt;
    opt.certify = certify;
    BasisSet b = build_basis(kind, o.l, opt);
    for (const auto& w : b.warnings) std::cerr << "warning: " << w << "\n";
    json j = to_json(b);
    if (!json_path.empty()) write_json(json_path, j);
    if (o.json_out) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "kind: " << to_string(kind) << "  l: " << o.l << "  m: 2\n";
        std::cout << "operators: " << b.etas.size() + b.thetas.size() << "\n";
        std::cout << "exponents: " << join(exponents(b.operators())) << "\n";
        if (certify) {
            const auto& c = *b.certificate;
            std::cout << "is_basis: " << (c.is_basis ? "true" : "false") << "\n";
            std::cout << "c: " << (c.c ? to_string(*c.c) : "none") << "\n";
            std::cout << "t_m: " << c.t_m << "\n";
            std::cout << "method: " << c.method;
            if (c.method == "modular") std::cout << " (" << c.grid_points << " points, " << c.grid_primes << " primes)";
            std::cout << "\n";
        }
        if (show_ops) {
            for (std::size_t k = 0; k < b.etas.size(); ++k)
                std::cout << "eta" << k + 1 << " = " << render_op(b.etas[k]) << "\n";
            for (const auto& [p, op] : b.thetas) std::cout << "theta" << p.str() << " = " << render_op(op) << "\n";
        }
    }
    return !certify || b.certified ? kOk : kFailed;
}

int cmd_certify(const Common& o, const std::string& ops_path) {
    auto ops = operators_from_json(read_json(ops_path));
    if (ops.empty()) throw invalid_argument("no operators in " + ops_path);
    int l = o.l > 0 ? o.l : ops.front().l();
    guard(l, o.force);
    auto arr = build_arrangement(parse_kind(o.kind), l);
    Certificate c;
    try {
        c = saito_holm_certify(ops, arr);
    } catch (const non_member& e) {
        std::cerr << "not a member: " << e.what() << "\n";
        return kFailed;
    } catch (const non_homogeneous& e) {
        std::cerr << "non-homogeneous input: " << e.what() << "\n";
        return kFailed;
    }
    json j = certificate_summary(c, exponents(ops));
    std::cout << (o.json_out ? j.dump(2) : j.dump()) << "\n";
    return c.is_basis ? kOk : kFailed;
}

int cmd_membership(const Common& o, const std::string& op_path) {
    DiffOperator op = operator_from_json(read_json(op_path));
    int l = o.l > 0 ? o.l : op.l();
    auto arr = build_arrangement(parse_kind(o.kind), l);
    json failing = json::array();
    for (const auto& f : arr.forms)
        if (!member_of_form(op, f)) failing.push_back(render(f));
    bool member = failing.empty();
    json j = {{"arrangement", arr.name()}, {"member", member}, {"failing_forms", failing}};
    std::cout << (o.json_out ? j.dump(2) : j.dump()) << "\n";
    return member ? kOk : kFailed;
}

int cmd_schur(const Common& o, const std::string& lambda_text, bool raw, bool m_given) {
    Kind kind = parse_kind(o.kind);
    Partition p = parse_partition(lambda_text);
    int m = m_given ? o.m : static_cast<int>(p.size());
    if (static_cast<int>(p.size()) != m) throw invalid_argument("partition length must equal m");
    LaurentPolynomial s = raw ? schur_ratio(kind, p, m) : schur(kind, p, m);
    if (o.json_out) {
        std::cout << to_json(s).dump(2) << "\n";
    } else {
        std::cout << render(s, "t") << "\n";
    }
    return kOk;
}

int cmd_compound(const Common& o, const std::string& matrix_path, bool check, const std::string& out) {
    PolyMatrix a = matrix_from_json(read_json(matrix_path));
    if (!a.is_square()) throw invalid_argument("compound matrices are taken of square matrices");
    if (o.m < 1 || o.m > a.rows()) throw invalid_argument("m must lie in [1, n]");
    PolyMatrix c = compound_matrix(a, o.m);
    if (!out.empty() || o.json_out) write_json(out, to_json(c));
    if (check) {
        bool ok = verify_cauchy_sylvester(a, o.m);
        std::cout << "cauchy-sylvester: " << (ok ? "pass" : "FAIL") << "\n";
        return ok ? kOk : kFailed;
    }
    if (out.empty() && !o.json_out)
        for (int r = 0; r < c.rows(); ++r) {
            for (int k = 0; k < c.cols(); ++k) std::cout << (k ? "\t" : "") << render(c(r, k));
            std::cout << "\n";
        }
    return kOk;
}

int verify_cauchy_sylvester_cmd(const Common& o, int trials, std::uint64_t seed, int range) {
    if (o.l < 1 || o.l > kMaxVars) throw invalid_argument("l out of range");
    if (o.m < 1 || o.m > o.l) throw invalid_argument("m must lie in [1, l]");
    if (trials < 1 || range < 1) throw invalid_argument("trials and range must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-range, range);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        PolyMatrix a(o.l, o.l, 1);
        for (int r = 0; r < o.l; ++r)
            for (int c = 0; c < o.l; ++c) a(r, c) = Polynomial::constant(1, Rational(dist(rng)));
        if (!verify_cauchy_sylvester(a, o.m)) ++failures;
    }
    json j = {{"check", "cauchy-sylvester"}, {"l", o.l}, {"m", o.m}, {"trials", trials}, {"seed", seed},
              {"failures", failures}, {"pass", failures == 0}};
    std::cout << (o.json_out ? j.dump(2) : j.dump()) << "\n";
    return failures == 0 ? kOk : kFailed;
}

int verify_schur_identity_cmd(const Common& o) {
    Kind kind = parse_kind(o.kind);
    if (o.m < 1 || o.l < o.m) throw invalid_argument("need l >= m >= 1");
    auto rep = verify_schur_det_identity(kind, o.l, o.m);
    json j = {{"check", "schur-identity"}, {"kind", to_string(kind)}, {"l", o.l}, {"m", o.m}, {"pass", rep.holds},
              {"sign", rep.sign}, {"det", render(rep.lhs)}};
    std::cout << (o.json_out ? j.dump(2) : j.dump()) << "\n";
    return rep.holds ? kOk : kFailed;
}

int verify_membership_cmd(const Common& o) {
    Kind kind = parse_kind(o.kind);
    guard(o.l, o.force);
    BuildOptions opt;
    opt.certify = false;
    auto b = build_basis(kind, o.l, opt);
    auto arr = build_arrangement(kind, o.l);
    auto ops = b.operators();
    std::vector<char> ok(ops.size(), 0);
    parallel_for(ops.size(), [&](std::size_t i) { ok[i] = member_of(ops[i], arr) ? 1 : 0; });
    json failing = json::array();
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (!ok[i]) failing.push_back(i < b.etas.size() ? "eta" + std::to_string(i + 1)
                                                        : "theta" + b.thetas[i - b.etas.size()].first.str());
    json j = {{"check", "membership"}, {"kind", to_string(kind)}, {"l", o.l}, {"operators", ops.size()},
              {"failing", failing}, {"pass", failing.empty()}};
    std::cout << (o.json_out ? j.dump(2) : j.dump()) << "\n";
    return failing.empty() ? kOk : kFailed;
}

int cmd_invariance(const Common& o) {
    Kind kind = parse_kind(o.kind);
    guard(o.l, o.force);
    BuildOptions opt;
    opt.certify = false;
    auto b = build_basis(kind, o.l, opt);
    auto gens = generators(kind, o.l);
    bool ok = true;
    json thetas = json::array();
    for (const auto& [p, op] : b.thetas) {
        bool inv = is_invariant(op, gens);
        ok = ok && inv;
        thetas.push_back({{"lambda", p.str()}, {"invariant", inv}});
    }
    json actions = json::array();
    std::vector<EtaAction> acts;
    try {
        acts = eta_action_matrices(kind, o.l);
    } catch (const not_closed& e) {
        std::cerr << e.what() << "\n";
        return kFailed;
    }
    for (const auto& a : acts) {
        ok = ok && a.matches_standard;
        actions.push_back({{"generator", a.generator}, {"element", a.w.str()}, {"matrix", a.matrix},
                           {"matches_standard", a.matches_standard}});
    }
    auto null = invariant_eta_combinations(acts, o.l);
    const std::size_t expected = kind == Kind::A ? 1 : 0;
    json null_json = json::array();
    for (const auto& v : null) {
        json row = json::array();
        for (const auto& q : v) row.push_back(to_string(q));
        null_json.push_back(row);
    }
    ok = ok && null.size() == expected;
    auto rep = check_basis_action(b);
    ok = ok && rep.ok();
    json j = {{"kind", to_string(kind)},
              {"l", o.l},
              {"thetas", thetas},
              {"eta_actions", actions},
              {"invariant_eta_combinations", null_json},
              {"nullspace_dimension", null.size()},
              {"expected_nullspace_dimension", expected},
              {"basis_action_ok", rep.ok()},
              {"failures", rep.failures},
              {"pass", ok}};
    if (o.json_out) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "kind " << to_string(kind) << ", l = " << o.l << "\n";
        std::size_t inv = 0;
        for (const auto& t : thetas) inv += t["invariant"].get<bool>() ? 1 : 0;
        std::cout << "thetas invariant: " << inv << "/" << thetas.size() << "\n";
        for (const auto& a : acts)
            std::cout << "generator " << a.generator << " " << a.w.str() << ": eta matrix "
                      << (a.matches_standard ? "matches" : "DIFFERS FROM") << " its action on V\n";
        std::cout << "invariant eta combinations: dimension " << null.size() << " (expected " << expected << ")\n";
        std::cout << "basis closed under generators: " << (rep.closed ? "yes" : "no") << "\n";
        for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
        std::cout << (ok ? "pass" : "FAIL") << "\n";
    }
    return ok ? kOk : kFailed;
}

int cmd_act(const Common& o, const std::string& word, const std::string& op_path) {
    DiffOperator op = operator_from_json(read_json(op_path));
    SignedPermutation w = parse_signed_permutation(word, op.l());
    DiffOperator r = act_op(w, op);
    if (o.json_out) {
        std::cout << to_json(r).dump(2) << "\n";
    } else {
        std::cout << render_op(r) << "\n";
    }
    return kOk;
}

int cmd_arrangement(const Common& o, bool show_q) {
    Kind kind = parse_kind(o.kind);
    auto a = build_arrangement(kind, o.l);
    if (o.json_out) {
        json forms = json::array();
        for (const auto& f : a.forms) forms.push_back(to_json(f));
        json j = {{"name", a.name()}, {"l", a.l}, {"hyperplanes", a.forms.size()}, {"forms", forms}};
        if (show_q) j["q"] = to_json(a.q);
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    std::cout << a.name() << ": " << a.forms.size() << " hyperplanes in " << a.l << " variables\n";
    for (const auto& f : a.forms) std::cout << "  " << render(f) << "\n";
    if (show_q) std::cout << "Q = " << render(a.q) << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact construction and certification of bases for order-2 differential operators on "
                 "Coxeter arrangements of types A, B and D."};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0: COXOPS_THREADS or all cores)")->check(CLI::NonNegativeNumber);

    Common o;
    std::function<int()> run;
    auto kind_opt = [&](CLI::App* s, bool required = true) {
        auto* opt = s->add_option("--kind", o.kind, "Coxeter type: A, B or D");
        if (required) opt->required();
    };
    auto json_flag = [&](CLI::App* s) { s->add_flag("--json", o.json_out, "Print JSON instead of text"); };

    // basis
    auto* basis = app.add_subcommand("basis", "Build (and certify) the m = 2 basis");
    bool certify_flag = false, no_certify = false, show_ops = false;
    std::string basis_json;
    kind_opt(basis);
    basis->add_option("--l", o.l, "Number of variables")->required();
    basis->add_option("--m", o.m, "Operator order (2)");
    basis->add_flag("--certify", certify_flag, "Run the determinant criterion (default)");
    basis->add_flag("--no-certify", no_certify, "Skip the determinant criterion");
    basis->add_option("--json", basis_json, "Write the basis with its certificate to this file");
    basis->add_flag("--print-json", o.json_out, "Print JSON to stdout");
    basis->add_flag("--show-ops", show_ops, "Print every operator");
    basis->add_flag("--force", o.force, "Allow l > 8");
    basis->callback([&] { run = [&] { return cmd_basis(o, certify_flag || !no_certify, basis_json, show_ops); }; });

    // certify
    auto* certify = app.add_subcommand("certify", "Apply the determinant criterion to operators from JSON");
    std::string ops_path;
    certify->add_option("--ops", ops_path, "Operator list (JSON)")->required();
    kind_opt(certify);
    certify->add_option("--l", o.l, "Number of variables (default: from the operators)");
    certify->add_flag("--force", o.force, "Allow l > 8");
    json_flag(certify);
    certify->callback([&] { run = [&] { return cmd_certify(o, ops_path); }; });

    // membership
    auto* membership = app.add_subcommand("membership", "Test an operator against every hyperplane");
    std::string op_path;
    membership->add_option("--op", op_path, "Operator (JSON)")->required();
    kind_opt(membership);
    membership->add_option("--l", o.l, "Number of variables (default: from the operator)");
    json_flag(membership);
    membership->callback([&] { run = [&] { return cmd_membership(o, op_path); }; });

    // schur
    auto* schur_cmd = app.add_subcommand("schur", "Print s_lambda for type A, B or D");
    std::string lambda_text;
    bool raw = false;
    kind_opt(schur_cmd);
    schur_cmd->add_option("--lambda", lambda_text, "Partition, e.g. 2,1")->required();
    auto* schur_m = schur_cmd->add_option("--m", o.m, "Number of variables (default: partition length)");
    schur_cmd->add_flag("--ratio", raw, "Use the alternant ratio instead of the factored form");
    json_flag(schur_cmd);
    schur_cmd->callback([&] { run = [&] { return cmd_schur(o, lambda_text, raw, schur_m->count() > 0); }; });

    // compound
    auto* compound = app.add_subcommand("compound", "m-th compound of a matrix (JSON)");
    std::string matrix_path, compound_out;
    bool check_cs = false;
    compound->add_option("--matrix", matrix_path, "Matrix (JSON)")->required();
    compound->add_option("--m", o.m, "Minor size")->required();
    compound->add_option("--out", compound_out, "Write the compound matrix here");
    compound->add_flag("--check", check_cs, "Also check det A^(m) = (det A)^C(n-1,m-1)");
    json_flag(compound);
    compound->callback([&] { run = [&] { return cmd_compound(o, matrix_path, check_cs, compound_out); }; });

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->require_subcommand(1);
    int trials = 20, range = 9;
    std::uint64_t seed = 20240601;
    auto* v_cs = verify->add_subcommand("cauchy-sylvester", "Random integer matrices");
    v_cs->add_option("--l", o.l, "Matrix size")->required();
    v_cs->add_option("--m", o.m, "Minor size")->required();
    v_cs->add_option("--trials", trials, "Number of matrices");
    v_cs->add_option("--seed", seed, "Random seed");
    v_cs->add_option("--range", range, "Entries drawn from [-range, range]");
    json_flag(v_cs);
    v_cs->callback([&] { run = [&] { return verify_cauchy_sylvester_cmd(o, trials, seed, range); }; });
    auto* v_si = verify->add_subcommand("schur-identity", "det(s_lambda(x_mu)) against its product formula");
    kind_opt(v_si);
    v_si->add_option("--l", o.l, "Number of variables")->required();
    v_si->add_option("--m", o.m, "Partition length")->required();
    json_flag(v_si);
    v_si->callback([&] { run = [&] { return verify_schur_identity_cmd(o); }; });
    auto* v_inv = verify->add_subcommand("invariance", "Group action suite");
    kind_opt(v_inv);
    v_inv->add_option("--l", o.l, "Number of variables")->required();
    v_inv->add_flag("--force", o.force, "Allow l > 8");
    json_flag(v_inv);
    v_inv->callback([&] { run = [&] { return cmd_invariance(o); }; });
    auto* v_mem = verify->add_subcommand("membership", "Membership of every constructed operator");
    kind_opt(v_mem);
    v_mem->add_option("--l", o.l, "Number of variables")->required();
    v_mem->add_flag("--force", o.force, "Allow l > 8");
    json_flag(v_mem);
    v_mem->callback([&] { run = [&] { return verify_membership_cmd(o); }; });

    // verify-identity: shorthand for verify schur-identity
    auto* vid = app.add_subcommand("verify-identity", "Same as verify schur-identity");
    kind_opt(vid);
    vid->add_option("--l", o.l, "Number of variables")->required();
    vid->add_option("--m", o.m, "Partition length")->required();
    json_flag(vid);
    vid->callback([&] { run = [&] { return verify_schur_identity_cmd(o); }; });

    // act
    auto* act = app.add_subcommand("act", "Apply a signed permutation to an operator");
    std::string word;
    act->add_option("--w", word, "Group element, e.g. s12, t3 or s34t3t4")->required();
    act->add_option("--op", op_path, "Operator (JSON)")->required();
    json_flag(act);
    act->callback([&] { run = [&] { return cmd_act(o, word, op_path); }; });

    // invariance
    auto* inv = app.add_subcommand("invariance", "Group action suite (same as verify invariance)");
    kind_opt(inv);
    inv->add_option("--l", o.l, "Number of variables")->required();
    inv->add_flag("--force", o.force, "Allow l > 8");
    json_flag(inv);
    inv->callback([&] { run = [&] { return cmd_invariance(o); }; });

    // arrangement
    auto* arr = app.add_subcommand("arrangement", "List the hyperplanes of a Coxeter arrangement");
    bool show_q = false;
    kind_opt(arr);
    arr->add_option("--l", o.l, "Number of variables")->required();
    arr->add_flag("--show-q", show_q, "Print the expanded defining polynomial");
    json_flag(arr);
    arr->callback([&] { run = [&] { return cmd_arrangement(o, show_q); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kBadArgs;
    }
    if (threads > 0) set_thread_count(threads);
    try {
        return run();
    } catch (const invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const dimension_mismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kFailed;
    }
}
