#include "ramcov/ramification.hpp"

#include "ramcov/expr.hpp"
#include "ramcov/ratfunc.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ramcov {

namespace {

std::vector<long> parse_partition(const std::string& part) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos <= part.size()) {
        std::size_t plus = part.find('+', pos);
        std::string piece = part.substr(pos, plus == std::string::npos ? plus : plus - pos);
        std::size_t a = piece.find_first_not_of(" \t");
        std::size_t b = piece.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw std::invalid_argument("parse_pattern: empty part in \"" + part + "\"");
        piece = piece.substr(a, b - a + 1);
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("parse_pattern: bad part \"" + piece + "\"");
        out.push_back(std::stol(piece));
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    std::sort(out.begin(), out.end(), std::greater<long>());
    return out;
}

long partition_sum(const std::vector<long>& p) {
    long s = 0;
    for (long v : p) s += v;
    return s;
}

void check_partition(const std::vector<long>& part, long degree, const char* which) {
    for (long v : part)
        if (v < 1)
            throw std::invalid_argument(std::string("pattern: part < 1 in partition over ") + which);
    if (partition_sum(part) != degree) {
        std::ostringstream os;
        os << "pattern: partition over " << which << " sums to " << partition_sum(part)
           << ", degree is " << degree;
        throw std::invalid_argument(os.str());
    }
}

const char* fiber_name(FiberRef f) {
    switch (f) {
        case FiberRef::above_zero: return "fiber above 0";
        case FiberRef::above_one: return "fiber above 1";
        case FiberRef::above_infinity: return "fiber above infinity";
        case FiberRef::extra_point: return "extra point";
    }
    return "?";
}

}  // namespace

RamPattern parse_pattern(const std::string& text) {
    std::string body = text;
    std::optional<bool> almost;
    if (body.rfind("R4:", 0) == 0) {
        almost = true;
        body = body.substr(3);
    } else if (body.rfind("R3:", 0) == 0) {
        almost = false;
        body = body.substr(3);
    }
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t bar = body.find('|', pos);
        parts.push_back(body.substr(pos, bar == std::string::npos ? bar : bar - pos));
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("parse_pattern: expected three partitions separated by '|'");
    RamPattern p;
    p.p0 = parse_partition(parts[0]);
    p.p1 = parse_partition(parts[1]);
    p.pinf = parse_partition(parts[2]);
    p.degree = partition_sum(p.p0);
    check_partition(p.p1, p.degree, "1");
    check_partition(p.pinf, p.degree, "infinity");
    long points = (long)(p.p0.size() + p.p1.size() + p.pinf.size());
    p.almost_belyi = almost ? *almost : (points != p.degree + 2);
    return p;
}

std::string pattern_str(const RamPattern& p) {
    std::ostringstream os;
    os << (p.almost_belyi ? "R4:" : "R3:");
    const std::vector<long>* parts[3] = {&p.p0, &p.p1, &p.pinf};
    for (int i = 0; i < 3; ++i) {
        if (i) os << '|';
        for (std::size_t j = 0; j < parts[i]->size(); ++j) {
            if (j) os << '+';
            os << (*parts[i])[j];
        }
    }
    return os.str();
}

HurwitzCount hurwitz_count(const RamPattern& p) {
    if (p.degree < 1) throw std::invalid_argument("pattern: degree must be positive");
    check_partition(p.p0, p.degree, "0");
    check_partition(p.p1, p.degree, "1");
    check_partition(p.pinf, p.degree, "infinity");
    HurwitzCount h;
    h.points = (long)(p.p0.size() + p.p1.size() + p.pinf.size());
    h.expected = p.degree + (p.almost_belyi ? 3 : 2);
    h.valid = h.points == h.expected;
    return h;
}

namespace {

// Orders appearing exactly once in the partition, ascending.
std::vector<long> isolated_orders(const std::vector<long>& part) {
    std::map<long, long> mult;
    for (long v : part) mult[v]++;
    std::vector<long> out;
    for (auto& [order, m] : mult)
        if (m == 1) out.push_back(order);
    return out;
}

}  // namespace

NormalizationChoice isolated_orders_normalization(const RamPattern& p) {
    NormalizationChoice n;
    std::vector<long> iso_inf = isolated_orders(p.pinf);
    if (iso_inf.empty())
        throw std::invalid_argument(
            "isolated_orders_normalization: no isolated ramification order above infinity");
    n.at_infinity = PointPin{FiberRef::above_infinity, iso_inf.front()};

    std::vector<PointPin> queue;
    for (long o : isolated_orders(p.p0)) queue.push_back({FiberRef::above_zero, o});
    for (long o : isolated_orders(p.p1)) queue.push_back({FiberRef::above_one, o});
    if (p.almost_belyi) queue.push_back({FiberRef::extra_point, 2});
    if (!queue.empty()) {
        n.at_zero = queue.front();
        queue.erase(queue.begin());
    }
    if (!queue.empty()) n.at_one = queue.front();
    return n;
}

NormalizationChoice highest_orders_normalization(const RamPattern& p) {
    if (p.pinf.size() < 2)
        throw std::invalid_argument(
            "highest_orders_normalization: needs two finite-order points above infinity");
    NormalizationChoice n;
    n.at_infinity = PointPin{FiberRef::above_infinity, p.pinf[0]};
    n.at_zero = PointPin{FiberRef::above_infinity, p.pinf[1]};
    if (p.almost_belyi) n.at_one = PointPin{FiberRef::extra_point, 2};
    return n;
}

namespace {

struct FactorPlan {
    FiberRef fiber;
    long order;
    long degree;        // of the monic polynomial
    bool pinned;        // explicit x or x-1 factor
    bool pinned_at_one; // x-1 rather than x
    bool location;      // degree 1 with a root unknown, written x - u
    std::string letter; // coefficient family, or the location unknown prefix
};

int letter_rank(const std::string& letter) {
    static const char* seq[] = {"a", "b", "c", "d", "e", "p", "q", "y0"};
    for (int i = 0; i < 8; ++i)
        if (letter == seq[i]) return i;
    return 100;
}

}  // namespace

AnsatzSystem build_ansatz(const RamPattern& p, const NormalizationChoice& norm) {
    HurwitzCount h = hurwitz_count(p);
    if (!h.valid) {
        std::ostringstream os;
        os << "build_ansatz: pattern has " << h.points << " points, expected " << h.expected;
        throw std::invalid_argument(os.str());
    }
    if (!norm.at_infinity || norm.at_infinity->fiber != FiberRef::above_infinity)
        throw std::invalid_argument(
            "build_ansatz: a point of the fiber above z=infinity must be pinned to x=infinity");

    // Multiset of parts that still need a polynomial factor, per fiber.
    std::map<long, long> remaining[3];  // index: 0 -> above 0, 1 -> above 1, 2 -> above infinity
    auto fiber_index = [](FiberRef f) {
        switch (f) {
            case FiberRef::above_zero: return 0;
            case FiberRef::above_one: return 1;
            case FiberRef::above_infinity: return 2;
            default: throw std::logic_error("fiber_index: extra point has no partition");
        }
    };
    for (long v : p.p0) remaining[0][v]++;
    for (long v : p.p1) remaining[1][v]++;
    for (long v : p.pinf) remaining[2][v]++;

    auto consume = [&](const PointPin& pin) {
        auto& mult = remaining[fiber_index(pin.fiber)][pin.order];
        if (mult <= 0) {
            std::ostringstream os;
            os << "build_ansatz: no unpinned part of order " << pin.order << " in the "
               << fiber_name(pin.fiber);
            throw std::invalid_argument(os.str());
        }
        --mult;
    };

    consume(*norm.at_infinity);

    // Resolve the finite pins; the extra point is tracked separately.
    int extra_pin = -1;  // 0 -> x=0, 1 -> x=1, -1 -> free
    std::vector<std::pair<const PointPin*, bool>> finite_pins;  // (pin, at_one)
    if (norm.at_zero) {
        if (norm.at_zero->fiber == FiberRef::extra_point) {
            if (!p.almost_belyi)
                throw std::invalid_argument("build_ansatz: Belyi pattern has no extra point to pin");
            extra_pin = 0;
        } else {
            consume(*norm.at_zero);
            finite_pins.push_back({&*norm.at_zero, false});
        }
    }
    if (norm.at_one) {
        if (norm.at_one->fiber == FiberRef::extra_point) {
            if (!p.almost_belyi)
                throw std::invalid_argument("build_ansatz: Belyi pattern has no extra point to pin");
            if (extra_pin == 0)
                throw std::invalid_argument("build_ansatz: extra point pinned twice");
            extra_pin = 1;
        } else {
            consume(*norm.at_one);
            finite_pins.push_back({&*norm.at_one, true});
        }
    }

    // Plan the factors: walk fiber above 0, above infinity, above 1 with
    // descending part sizes, the conventional order for naming coefficient
    // families.
    std::vector<FactorPlan> plans;
    const FiberRef walk[3] = {FiberRef::above_zero, FiberRef::above_infinity,
                              FiberRef::above_one};
    for (FiberRef f : walk) {
        auto& mult = remaining[fiber_index(f)];
        for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
            auto [order, m] = *it;
            if (m <= 0) continue;
            FactorPlan fp;
            fp.fiber = f;
            fp.order = order;
            fp.degree = m;
            fp.pinned = false;
            fp.pinned_at_one = false;
            fp.location = (m == 1);
            plans.push_back(fp);
        }
    }

    // Coefficient families: next unused letter for every multi-root factor,
    // except that the repeated-part factor of the fiber above 1 is always
    // the p family.  Degree-1 factors share one family of root locations.
    std::set<std::string> used;
    used.insert("p");
    auto next_letter = [&used]() {
        for (const char* c : {"a", "b", "c", "d", "e"})
            if (!used.count(c)) {
                used.insert(c);
                return std::string(c);
            }
        throw std::invalid_argument("build_ansatz: pattern needs more coefficient families than supported");
    };
    bool p_taken = false;
    for (FactorPlan& fp : plans) {
        if (fp.location) continue;
        if (fp.fiber == FiberRef::above_one) {
            fp.letter = p_taken ? "q" : "p";
            p_taken = true;
        } else {
            fp.letter = next_letter();
        }
    }
    std::string loc_letter;
    int loc_count = 0;
    for (FactorPlan& fp : plans) {
        if (!fp.location) continue;
        if (loc_letter.empty()) loc_letter = next_letter();
        fp.letter = loc_letter + std::to_string(++loc_count);
    }

    // Unknown names and weights; the x variable sits first with weight 1.
    struct UnknownSpec {
        std::string name;
        int weight;
        int rank;
        int index;
    };
    std::vector<UnknownSpec> specs;
    for (const FactorPlan& fp : plans) {
        if (fp.location) {
            specs.push_back({fp.letter, 1, letter_rank(fp.letter.substr(0, 1)),
                             std::stoi(fp.letter.substr(1))});
        } else {
            for (long k = 1; k <= fp.degree; ++k)
                specs.push_back({fp.letter + std::to_string(k), (int)k, letter_rank(fp.letter),
                                 (int)k});
        }
    }
    bool extra_free = p.almost_belyi && extra_pin < 0;
    if (extra_free) specs.push_back({"y0", 1, letter_rank("y0"), 0});
    std::sort(specs.begin(), specs.end(), [](const UnknownSpec& a, const UnknownSpec& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.index < b.index;
    });

    std::vector<std::string> names{"x"};
    std::vector<int> weights{1};
    for (const UnknownSpec& s : specs) {
        names.push_back(s.name);
        weights.push_back(s.weight);
    }

    AnsatzSystem a;
    a.pattern = p;
    a.norm = norm;
    a.vars = make_var_table(names, weights);
    a.x = 0;
    auto var_index = [&a](const std::string& n) {
        for (std::size_t i = 0; i < a.vars->names.size(); ++i)
            if (a.vars->names[i] == n) return (int)i;
        throw std::logic_error("build_ansatz: missing variable " + n);
    };
    const MultiPoly<Rat> X = MultiPoly<Rat>::variable(a.vars, a.x, Rat(1));
    const MultiPoly<Rat> one = MultiPoly<Rat>::constant(a.vars, Rat(1));

    auto push_factor = [&](const FactorPlan& fp) {
        FiberFactor f;
        f.fiber = fp.fiber;
        f.order = fp.order;
        f.degree = fp.degree;
        f.pinned = fp.pinned;
        if (fp.pinned) {
            f.poly = fp.pinned_at_one ? X - one : X;
        } else if (fp.location) {
            f.poly = X - MultiPoly<Rat>::variable(a.vars, var_index(fp.letter), Rat(1));
        } else {
            MultiPoly<Rat> poly = X.pow(fp.degree);
            for (long k = 1; k <= fp.degree; ++k)
                poly += MultiPoly<Rat>::variable(a.vars, var_index(fp.letter + std::to_string(k)),
                                                 Rat(1)) *
                        X.pow(fp.degree - k);
            f.poly = poly;
        }
        switch (fp.fiber) {
            case FiberRef::above_zero: a.zero_factors.push_back(std::move(f)); break;
            case FiberRef::above_one: a.one_factors.push_back(std::move(f)); break;
            case FiberRef::above_infinity: a.inf_factors.push_back(std::move(f)); break;
            default: throw std::logic_error("push_factor: extra point is not a fiber factor");
        }
    };
    for (const FactorPlan& fp : plans) push_factor(fp);
    for (auto& [pin, at_one] : finite_pins) {
        FactorPlan fp;
        fp.fiber = pin->fiber;
        fp.order = pin->order;
        fp.degree = 1;
        fp.pinned = true;
        fp.pinned_at_one = at_one;
        fp.location = false;
        push_factor(fp);
    }

    if (!p.almost_belyi)
        a.extra_factor = one;
    else if (extra_pin == 0)
        a.extra_factor = X;
    else if (extra_pin == 1)
        a.extra_factor = X - one;
    else
        a.extra_factor = X - MultiPoly<Rat>::variable(a.vars, var_index("y0"), Rat(1));

    a.infinity_order = norm.at_infinity->order;

    long deg_zero = 0, deg_one = 0, deg_inf = a.infinity_order;
    for (const FiberFactor& f : a.zero_factors) deg_zero += f.order * f.degree;
    for (const FiberFactor& f : a.one_factors) deg_one += f.order * f.degree;
    for (const FiberFactor& f : a.inf_factors) deg_inf += f.order * f.degree;
    if (deg_zero != p.degree || deg_one != p.degree || deg_inf != p.degree)
        throw std::logic_error("build_ansatz: fiber degree bookkeeping failed");

    for (const UnknownSpec& s : specs) a.unknowns.push_back(s.name);
    if (!a.unknowns.empty()) a.unknowns.push_back("C0");
    return a;
}

namespace {

MultiPoly<Rat> factor_power_product(const AnsatzSystem& a,
                                    const std::vector<FiberFactor>& factors, long shift) {
    MultiPoly<Rat> acc = MultiPoly<Rat>::constant(a.vars, Rat(1));
    for (const FiberFactor& f : factors) {
        long e = f.order + shift;
        if (e < 0) throw std::logic_error("factor_power_product: negative power");
        if (e > 0) acc *= f.poly.pow(e);
    }
    return acc;
}

// Numerator of sum_i e_i f_i'/f_i over the product of the f_i.
MultiPoly<Rat> logder_numerator(const AnsatzSystem& a,
                                const std::vector<std::pair<long, const MultiPoly<Rat>*>>& fs) {
    MultiPoly<Rat> acc = MultiPoly<Rat>::zero(a.vars);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        MultiPoly<Rat> term =
            MultiPoly<Rat>::constant(a.vars, Rat(fs[i].first)) * fs[i].second->derivative(a.x);
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) term *= *fs[j].second;
        acc += term;
    }
    return acc;
}

}  // namespace

std::vector<LogderIdentity> logder_identities(const AnsatzSystem& a) {
    std::vector<LogderIdentity> out(2);
    const MultiPoly<Rat> C = MultiPoly<Rat>::constant(a.vars, Rat(a.infinity_order));

    // phi'/phi: factors of phi, zeros from the fiber above 1.
    std::vector<std::pair<long, const MultiPoly<Rat>*>> fs;
    for (const FiberFactor& f : a.zero_factors) fs.push_back({f.order, &f.poly});
    for (const FiberFactor& f : a.inf_factors) fs.push_back({-f.order, &f.poly});
    out[0].rhs = logder_numerator(a, fs);
    out[0].lhs = C * a.extra_factor * factor_power_product(a, a.one_factors, -1);
    out[0].constant = a.infinity_order;

    // (phi-1)'/(phi-1): factors of phi-1, zeros from the fiber above 0.
    fs.clear();
    for (const FiberFactor& f : a.one_factors) fs.push_back({f.order, &f.poly});
    for (const FiberFactor& f : a.inf_factors) fs.push_back({-f.order, &f.poly});
    out[1].rhs = logder_numerator(a, fs);
    out[1].lhs = C * a.extra_factor * factor_power_product(a, a.zero_factors, -1);
    out[1].constant = a.infinity_order;
    return out;
}

std::pair<MultiPoly<Rat>, MultiPoly<Rat>> fiber_sum_identity(const AnsatzSystem& a) {
    MultiPoly<Rat> num0 = factor_power_product(a, a.zero_factors, 0);
    MultiPoly<Rat> num1 = factor_power_product(a, a.one_factors, 0);
    MultiPoly<Rat> den = factor_power_product(a, a.inf_factors, 0);
    return {num0 - num1, den};
}

std::vector<ExpandedEquation> expand_to_equations(const std::vector<LogderIdentity>& ids) {
    std::vector<ExpandedEquation> out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        MultiPoly<Rat> diff = ids[i].lhs - ids[i].rhs;
        if (diff.is_zero()) continue;
        int x = 0;  // x is variable 0 of every ansatz table
        auto parts = diff.collect_in(x);
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            if (it->second.is_zero()) continue;
            out.push_back({it->second, (int)i, (long)it->first});
        }
    }
    return out;
}

std::vector<MultiPoly<Rat>> equation_polys(const std::vector<ExpandedEquation>& eqs) {
    std::vector<MultiPoly<Rat>> out;
    out.reserve(eqs.size());
    for (const ExpandedEquation& e : eqs) out.push_back(e.poly);
    return out;
}

namespace {

int find_var(const VarTablePtr& vars, const std::string& name) {
    for (std::size_t i = 0; i < vars->names.size(); ++i)
        if (vars->names[i] == name) return (int)i;
    throw std::invalid_argument("unknown variable name: " + name);
}

}  // namespace

std::vector<MultiPoly<Rat>> eliminate_isolated(std::vector<MultiPoly<Rat>> eqs,
                                               const VarTablePtr& vars,
                                               const std::vector<std::string>& order,
                                               std::vector<SolvedVar>* solved) {
    for (const std::string& name : order) {
        int v = find_var(vars, name);
        std::size_t best = eqs.size();
        Rat best_coeff;
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            int hits = 0;
            bool pure = false;
            Rat coeff;
            for (const auto& [e, c] : eqs[i].terms()) {
                if ((std::size_t)v >= e.size() || e[v] == 0) continue;
                ++hits;
                bool alone = e[v] == 1;
                for (std::size_t k = 0; alone && k < e.size(); ++k)
                    if ((int)k != v && e[k] != 0) alone = false;
                pure = alone;
                coeff = c;
            }
            if (hits != 1 || !pure) continue;
            if (best == eqs.size() || eqs[i].num_terms() < eqs[best].num_terms()) {
                best = i;
                best_coeff = coeff;
            }
        }
        if (best == eqs.size())
            throw std::runtime_error("eliminate_isolated: no equation isolates " + name);
        MultiPoly<Rat> var_term =
            MultiPoly<Rat>::variable(vars, v, Rat(1)) * MultiPoly<Rat>::constant(vars, best_coeff);
        MultiPoly<Rat> value = (var_term - eqs[best]) / best_coeff;
        eqs.erase(eqs.begin() + (long)best);
        std::vector<MultiPoly<Rat>> next;
        next.reserve(eqs.size());
        for (MultiPoly<Rat>& e : eqs) {
            MultiPoly<Rat> s = e.subst_var(v, value);
            if (!s.is_zero()) next.push_back(std::move(s));
        }
        eqs = std::move(next);
        if (solved) {
            for (SolvedVar& s : *solved) s.value = s.value.subst_var(v, value);
            solved->push_back({name, value});
        }
    }
    return eqs;
}

EliminationStrategy degree12_strategy() {
    EliminationStrategy s;
    s.isolated = {"a1", "p1", "p2", "p3", "p4", "p5", "p6"};
    s.linear = {"b1", "b2", "b3"};
    s.resultant_var = "a3";
    s.degenerate = {"a3", "c2", "c1^2 - 4*c2"};
    return s;
}

namespace {

MultiPoly<Rat> parse_poly(const VarTablePtr& vars, const std::string& text) {
    ExprEnv<MultiPoly<Rat>> env;
    env.from_int = [&vars](const Int& n) {
        return MultiPoly<Rat>::constant(vars, Rat(n));
    };
    env.div = [](const MultiPoly<Rat>& a, const MultiPoly<Rat>& b) { return exact_div(a, b); };
    for (std::size_t i = 0; i < vars->names.size(); ++i)
        env.vars[vars->names[i]] = MultiPoly<Rat>::variable(vars, (int)i, Rat(1));
    return parse_expr(text, env);
}

bool proportional(const MultiPoly<Rat>& p, const MultiPoly<Rat>& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    auto [qe, qc] = q.lex_leading();
    auto it = p.terms().find(qe);
    if (it == p.terms().end()) return false;
    return p * qc == q * it->second;
}

MultiPoly<Rat> strip_known(const MultiPoly<Rat>& p, const std::vector<MultiPoly<Rat>>& factors) {
    return primitive_part(strip_factors(p, factors).stripped);
}

// View a polynomial in two surviving variables as an element of Q(param)[main].
UniPoly<Qt> to_rational_coeffs(const MultiPoly<Rat>& f, int main, int param) {
    auto by_main = f.collect_in(main);
    long deg = by_main.empty() ? -1 : by_main.rbegin()->first;
    std::vector<Qt> coeffs((std::size_t)(deg + 1), Qt());
    for (auto& [k, coeff] : by_main) {
        auto by_param = coeff.collect_in(param);
        std::vector<Rat> cs;
        for (auto& [j, c] : by_param) {
            if (!c.is_constant())
                throw std::logic_error("to_rational_coeffs: extra variables survive");
            if ((long)cs.size() <= j) cs.resize((std::size_t)j + 1, Rat(0));
            cs[(std::size_t)j] = c.constant_coeff(Rat(0));
        }
        coeffs[(std::size_t)k] = Qt(UniPoly<Rat>::from_coeffs(cs));
    }
    return UniPoly<Qt>::from_coeffs(coeffs);
}

// Back from Q(param)[main] to a primitive polynomial in Q[param][main].
MultiPoly<Rat> clear_rational_coeffs(const UniPoly<Qt>& g, const VarTablePtr& vars, int main,
                                     int param) {
    UniPoly<Rat> common = UniPoly<Rat>::from_coeffs({Rat(1)});
    for (long k = 0; k <= g.deg(); ++k) {
        const Qt& c = g.coeff(k);
        if (c.is_zero()) continue;
        UniPoly<Rat> den = c.den();
        UniPoly<Rat> red = gcd(common, den);
        common = common * exact_div(den, red);
    }
    std::vector<UniPoly<Rat>> nums((std::size_t)(g.deg() + 1));
    UniPoly<Rat> content;
    bool first = true;
    for (long k = 0; k <= g.deg(); ++k) {
        const Qt& c = g.coeff(k);
        if (c.is_zero()) continue;
        nums[(std::size_t)k] = c.num() * exact_div(common, c.den());
        content = first ? nums[(std::size_t)k] : gcd(content, nums[(std::size_t)k]);
        first = false;
    }
    MultiPoly<Rat> out = MultiPoly<Rat>::zero(vars);
    for (long k = 0; k <= g.deg(); ++k) {
        if (nums[(std::size_t)k].is_zero()) continue;
        UniPoly<Rat> n = exact_div(nums[(std::size_t)k], content);
        for (long j = 0; j <= n.deg(); ++j) {
            if (n.coeff(j) == Rat(0)) continue;
            Exp e((std::size_t)vars->names.size(), 0);
            e[(std::size_t)main] = (std::uint16_t)k;
            e[(std::size_t)param] = (std::uint16_t)j;
            out += MultiPoly<Rat>::monomial(vars, e, n.coeff(j));
        }
    }
    return primitive_part(out);
}

MultiPoly<Rat> rehomogenize(const MultiPoly<Rat>& f, int var) {
    long target = 0;
    for (const auto& [e, c] : f.terms())
        target = std::max(target, weighted_degree(e, *f.vars()));
    MultiPoly<Rat> out = MultiPoly<Rat>::zero(f.vars());
    for (const auto& [e, c] : f.terms()) {
        long gap = target - weighted_degree(e, *f.vars());
        Exp e2 = e;
        e2[(std::size_t)var] = (std::uint16_t)(e2[(std::size_t)var] + gap);
        out += MultiPoly<Rat>::monomial(f.vars(), e2, c);
    }
    return out;
}

}  // namespace

Degree12Derivation derive_degree12_curve(const EliminationStrategy& strategy) {
    Degree12Derivation d;
    RamPattern pattern = parse_pattern("R4:3+3+3+1+1+1|2+2+2+2+2+2|5+5+2");
    d.ansatz = build_ansatz(pattern, isolated_orders_normalization(pattern));
    d.equations = expand_to_equations(logder_identities(d.ansatz));

    d.reduced = eliminate_isolated(equation_polys(d.equations), d.ansatz.vars, strategy.isolated,
                                   &d.substitutions);

    std::vector<int> linear_vars;
    for (const std::string& n : strategy.linear) linear_vars.push_back(find_var(d.ansatz.vars, n));
    d.elimination = linear_eliminate(d.reduced, linear_vars);

    std::vector<MultiPoly<Rat>> degenerate;
    for (const std::string& s : strategy.degenerate)
        degenerate.push_back(parse_poly(d.ansatz.vars, s));

    for (const LinearEliminant& e : d.elimination.eliminants) {
        MultiPoly<Rat> s = strip_known(e.eliminant, degenerate);
        if (!s.is_zero() && !s.is_constant()) d.eliminants.push_back(std::move(s));
    }
    std::sort(d.eliminants.begin(), d.eliminants.end(),
              [](const MultiPoly<Rat>& a, const MultiPoly<Rat>& b) {
                  if (a.wdeg() != b.wdeg()) return a.wdeg() < b.wdeg();
                  return a.num_terms() < b.num_terms();
              });

    int a3 = find_var(d.ansatz.vars, strategy.resultant_var);
    int c1 = find_var(d.ansatz.vars, "c1");
    int c2 = find_var(d.ansatz.vars, "c2");
    int a2 = find_var(d.ansatz.vars, "a2");

    // Resultants of eliminant pairs acquire parasitic components (leading
    // coefficient loci and the like) on top of the projected solution set.
    // The parasites are specific to each pair, so the gcd across pairs that
    // do not all share one eliminant removes them.
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < d.eliminants.size(); ++i)
        if (d.eliminants[i].degree_in(a3) >= 1) usable.push_back(i);
    const std::size_t pair_plan[][2] = {{0, 1}, {0, 2}, {1, 2}, {3, 4}};
    for (const auto& pair : pair_plan) {
        if (pair[1] >= usable.size()) continue;
        MultiPoly<Rat> r =
            resultant_in_var(d.eliminants[usable[pair[0]]], d.eliminants[usable[pair[1]]], a3);
        if (r.is_zero()) continue;
        r = strip_known(r, degenerate);
        if (r.is_constant()) continue;
        bool seen = false;
        for (const MultiPoly<Rat>& prev : d.resultants)
            if ((seen = proportional(prev, r))) break;
        if (!seen) d.resultants.push_back(std::move(r));
    }
    if (d.resultants.size() < 2)
        throw std::runtime_error("derive_degree12_curve: fewer than two independent resultants");

    const MultiPoly<Rat> one = MultiPoly<Rat>::constant(d.ansatz.vars, Rat(1));
    std::vector<MultiPoly<Rat>> dehom;
    for (const MultiPoly<Rat>& r : d.resultants) dehom.push_back(r.subst_var(c1, one));
    MultiPoly<Rat> common = interpolated_gcd(dehom, a2, c2);
    d.common = rehomogenize(common, c1);

    // What survives the gcd is the projection of the full solution variety:
    // besides the curve of genuine coverings it carries components of
    // degenerate solutions (collapsed coverings satisfy every equation too).
    // Those project into each resultant with multiplicity at least two,
    // while the covering locus is cut out transversally, so the curve is the
    // multiplicity-one part of the squarefree decomposition.
    UniPoly<Qt> over_qt = to_rational_coeffs(common, a2, c2);
    UniPoly<Qt> mult_one = UniPoly<Qt>::from_coeffs({Qt(1L)});
    for (const auto& [factor, mult] : squarefree_decomposition(over_qt))
        if (mult == 1) mult_one = mult_one * factor;
    if (mult_one.deg() <= 0)
        throw std::runtime_error("derive_degree12_curve: no multiplicity-one component");
    MultiPoly<Rat> curve = clear_rational_coeffs(mult_one, d.ansatz.vars, a2, c2);
    curve = strip_known(curve, {parse_poly(d.ansatz.vars, "c2"),
                                parse_poly(d.ansatz.vars, "1 - 4*c2")});
    d.curve = rehomogenize(curve, c1);

    MultiPoly<Rat>* no_quotient = nullptr;
    for (const MultiPoly<Rat>& r : d.resultants)
        if (!try_exact_div(r, d.curve, no_quotient))
            throw std::logic_error("derive_degree12_curve: curve does not divide every resultant");
    return d;
}

}  // namespace ramcov
