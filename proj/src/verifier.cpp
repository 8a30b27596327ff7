#include "finesel/verifier.hpp"

#include "finesel/arith.hpp"
#include "finesel/ellfp.hpp"
#include "finesel/formal.hpp"
#include "finesel/galrep.hpp"
#include "finesel/modparam.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace finesel {

namespace {

using Json = nlohmann::ordered_json;

Check pass(std::string w) { return {Status::Pass, std::move(w)}; }
Check fail(std::string w) { return {Status::Fail, std::move(w)}; }
Check unknown(std::string w) { return {Status::Inconclusive, std::move(w)}; }

std::string point_string(PointK const & P)
{
    if (P.is_identity())
        return "O";
    std::ostringstream o;
    o << "(" << P.x << ", " << P.y << ")";
    return o.str();
}

std::string join(std::vector<long> const & v, char const * sep = " ")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<std::string> split_csv(std::string const & line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    for (auto & c : out) {
        while (!c.empty() && std::isspace(static_cast<unsigned char>(c.back())))
            c.pop_back();
        std::size_t i = 0;
        while (i < c.size() && std::isspace(static_cast<unsigned char>(c[i])))
            ++i;
        c.erase(0, i);
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv(std::string const & path, std::string const & header)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != split_csv(header))
        throw std::runtime_error(path + ": expected header `" + header + "`");
    std::vector<std::vector<std::string>> rows;
    std::size_t const width = split_csv(header).size();
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto cells = split_csv(line);
        if (cells.size() != width)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(width) +
                                     " columns");
        rows.push_back(std::move(cells));
    }
    return rows;
}

long to_long(std::string const & s, std::string const & what)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (std::exception const &) {
        used = 0;
    }
    if (used != s.size() || s.empty())
        throw std::runtime_error("bad " + what + ": '" + s + "'");
    return v;
}

void validate_prime(long p)
{
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("p = " + std::to_string(p) + " must be a prime >= 5");
}

// ---------------------------------------------------------------- (*)

void check_star(VerificationReport & r, CurveQ const & E, QuadField const & K, Options const & opt)
{
    long const p = r.p;
    i64 const N = to_i64(E.conductor());
    i64 const dK = -K.disc();

    auto const hh = heegner_hypothesis(K, N);
    {
        std::string w;
        for (auto const & s : hh.witnesses) {
            if (!w.empty())
                w += ", ";
            w += std::to_string(s.prime) + " " + to_string(s.type);
        }
        r.star["i"] = hh.holds ? pass(w) : fail(w);
    }

    {
        u64 const phi = euler_phi(static_cast<u64>(N * dK));
        std::ostringstream w;
        w << "N=" << N << " |d_K|=" << dK << " h_K=" << K.class_number() << " phi(N|d_K|)=" << phi;
        bool const divides = N % p == 0 || dK % p == 0 || K.class_number() % p == 0 || phi % static_cast<u64>(p) == 0;
        r.star["ii"] = divides ? fail(w.str() + "; p divides the product") : pass(w.str());
    }

    if (N % p == 0) {
        r.star["iii"] = unknown("bad reduction at p");
    } else {
        auto const g = surjectivity_certificate(E, p, opt.ell_max);
        std::ostringstream w;
        auto sample = [&](char const * name, std::optional<FrobeniusSample> const & s) {
            if (s)
                w << name << "=" << s->ell << "(t=" << s->trace << ",d=" << s->det << ") ";
        };
        switch (g.status) {
        case GaloisCertificate::Status::Surjective:
            sample("irreducible", g.irreducible);
            sample("split", g.split);
            sample("nonexceptional", g.nonexceptional);
            r.star["iii"] = pass(w.str() + "samples=" + std::to_string(g.samples));
            break;
        case GaloisCertificate::Status::NotSurjective:
            r.star["iii"] = fail(g.reason);
            break;
        case GaloisCertificate::Status::Inconclusive:
            w << "no full witness set for l <= " << g.ell_max << " (" << g.samples << " samples)";
            if (!g.reason.empty())
                w << "; " << g.reason;
            r.star["iii"] = unknown(w.str());
            break;
        }
    }

    long const ap = r.ap;
    auto residue = [&](long v) { return ((v % p) + p) % p; };
    if (!r.ordinary) {
        for (char const * k : {"iva", "ivb", "ivc"})
            r.star[k] = pass("not applicable: supersingular");
        return;
    }
    long const count = p + 1 - ap;
    r.star["iva"] = residue(count) != 0 ? pass("#E(F_p)=" + std::to_string(count))
                                        : fail("#E(F_p)=" + std::to_string(count) + " divisible by p");
    std::string const apw = "a_p=" + std::to_string(ap) + " = " + std::to_string(residue(ap)) + " mod p";
    if (r.kronecker == -1)
        r.star["ivb"] = residue(ap) != residue(-1) ? pass(apw) : fail(apw);
    else
        r.star["ivb"] = pass("not applicable: p splits");
    if (r.kronecker == 1)
        r.star["ivc"] = residue(ap) != 2 % p ? pass(apw) : fail(apw);
    else
        r.star["ivc"] = pass("not applicable: p inert");
}

// ---------------------------------------------------------------- (a)-(e)

void check_thm41(VerificationReport & r, CurveQ const & E, QuadField const & K, Options const & opt)
{
    long const p = r.p;
    i64 const N = to_i64(E.conductor());
    bool const good = N % p != 0;

    std::optional<PointK> yK;
    if (r.star["i"].status != Status::Pass || std::gcd(N, K.disc()) != 1) {
        r.thm41["a"] = unknown("Heegner hypothesis does not hold; no Heegner point");
    } else {
        try {
            auto const h = heegner_trace(E, K, opt.precision);
            std::ostringstream w;
            w << "y_K=" << point_string(h.point) << " digits=" << h.digits_used << " terms=" << h.terms_used;
            if (h.point.is_identity() || !h.infinite_order.certified) {
                w << "; torsion of order " << h.infinite_order.torsion_order;
                r.thm41["a"] = fail(w.str());
            } else {
                w << "; k y_K != O for k <= " << h.infinite_order.bound;
                r.thm41["a"] = pass(w.str());
                yK = h.point;
            }
        } catch (RecognitionFailed const & e) {
            r.thm41["a"] = unknown(std::string("not recognised up to 320 digits: ") + e.what());
        } catch (PrecisionUnreachable const & e) {
            r.thm41["a"] = unknown(e.what());
        }
    }

    auto const tb = torsion_bound(E, K);
    long const mult = tb.bound;
    if (!yK) {
        r.thm41["b"] = unknown("needs a certified y_K");
    } else if (mult % p == 0) {
        r.thm41["b"] = unknown("p divides the torsion bound " + std::to_string(mult));
    } else {
        auto const b = condition_b_certificate(E, K, p, *yK, opt.aux_bound, mult);
        std::ostringstream w;
        if (b.status == ConditionB::Status::NotDivisible) {
            w << mult << "*y_K not divisible by p at " << b.witness.describe() << " (#E=" << b.group_order << ")";
            r.thm41["b"] = pass(w.str());
        } else {
            w << "no witness for l <= " << b.bound << " (" << b.places_tested << " places tested)";
            r.thm41["b"] = unknown(w.str());
        }
    }

    std::vector<long> orders;
    if (!good) {
        r.thm41["c"] = fail("bad reduction at p");
    } else {
        if (r.kronecker == 1)
            orders = {p + 1 - r.ap, p + 1 - r.ap};
        else
            orders = {order_fp2(r.ap, p)};
        bool ok = true;
        for (long o : orders)
            ok = ok && o % p != 0;
        r.thm41["c"] = ok ? pass("#E(k_v)=" + join(orders)) : fail("#E(k_v)=" + join(orders));
    }

    {
        std::ostringstream w;
        bool ok = true, disagree = false;
        for (auto const & ld : E.bad_primes()) {
            long index = ld.prime;
            if (ld.mult == Multiplicative::Split)
                index = ld.prime - 1;
            else if (ld.mult == Multiplicative::NonSplit)
                index = ld.prime + 1;
            bool const c_ok = ld.tamagawa % p != 0;
            ok = ok && c_ok;
            disagree = disagree || c_ok != (index % p != 0);
            w << (w.tellp() > 0 ? " " : "") << "c_" << ld.prime << "=" << ld.tamagawa << " [E0:E1]=" << index;
        }
        std::string s = w.str();
        s += disagree ? "; interpretations disagree" : "; interpretations agree";
        r.thm41["d"] = ok ? pass(s) : fail(s);
    }

    if (r.thm41["b"].status != Status::Pass || !yK || !good) {
        r.thm41["e"] = unknown("needs (a), (b) and good reduction at p");
    } else {
        auto const e = condition_e_check(E, K, p, *yK, mult, opt.local_precision);
        std::ostringstream w;
        w << "m=" << e.landing << " k=" << e.multiplier << " ord_v(log)=";
        for (std::size_t i = 0; i < e.valuations.size(); ++i)
            w << (i ? "," : "") << e.valuations[i];
        if (e.witness)
            w << " at " << e.places[*e.witness].describe();
        if (!e.note.empty())
            w << "; " << e.note;
        switch (e.status) {
        case ConditionE::Status::Pass: r.thm41["e"] = pass(w.str()); break;
        case ConditionE::Status::Fail: r.thm41["e"] = fail(w.str()); break;
        case ConditionE::Status::Inconclusive: r.thm41["e"] = unknown(w.str()); break;
        }
    }
}

std::vector<std::string> const kStarKeys = {"i", "ii", "iii", "iva", "ivb", "ivc"};
std::vector<std::string> const kThmKeys = {"a", "b", "c", "d", "e"};

Status verdict(std::map<std::string, Check> const & m, std::vector<std::string> const & keys)
{
    std::vector<Status> s;
    for (auto const & k : keys) {
        auto it = m.find(k);
        s.push_back(it == m.end() ? Status::Inconclusive : it->second.status);
    }
    return combine(s);
}

Json row_json(VerificationReport const & r)
{
    Json j;
    j["label"] = r.label;
    Json coeffs = Json::array();
    for (auto const & c : r.coefficients)
        coeffs.push_back(c.get_str());
    j["curve"] = coeffs;
    j["D"] = r.D;
    j["p"] = r.p;
    j["conductor"] = r.conductor.get_str();
    j["kronecker"] = r.kronecker;
    j["ap"] = r.ap;
    j["reduction"] = r.ordinary ? "ordinary" : "supersingular";
    j["class_number"] = r.class_number;
    Json star, thm, ws, wt;
    for (auto const & k : kStarKeys) {
        star[k] = to_string(r.star.at(k).status);
        ws[k] = r.star.at(k).witness;
    }
    for (auto const & k : kThmKeys) {
        thm[k] = to_string(r.thm41.at(k).status);
        wt[k] = r.thm41.at(k).witness;
    }
    star["verdict"] = to_string(r.star_verdict());
    thm["verdict"] = to_string(r.thm41_verdict());
    j["star"] = star;
    j["thm41"] = thm;
    j["witnesses"] = Json{{"star", ws}, {"thm41", wt}};
    j["assumptions"] = r.assumptions;
    return j;
}

std::string text_row(VerificationReport const & r)
{
    std::ostringstream o;
    o << (r.label.empty() ? "[" + r.coefficients[0].get_str() + "," + r.coefficients[1].get_str() + "," +
                                r.coefficients[2].get_str() + "," + r.coefficients[3].get_str() + "," +
                                r.coefficients[4].get_str() + "]"
                          : r.label)
      << "  D=" << r.D << "  p=" << r.p << "  N=" << r.conductor << "  (D/p)=" << r.kronecker << "  a_p=" << r.ap
      << "  " << (r.ordinary ? "ordinary" : "supersingular") << "  h_K=" << r.class_number << "\n";
    auto block = [&](char const * title, std::map<std::string, Check> const & m, std::vector<std::string> const & keys,
                     Status v) {
        o << "  " << title << ": " << to_string(v) << "\n";
        for (auto const & k : keys) {
            auto const & c = m.at(k);
            o << "    " << std::left << std::setw(4) << k << std::setw(13) << to_string(c.status) << c.witness << "\n";
        }
    };
    block("(*)", r.star, kStarKeys, r.star_verdict());
    block("conditions", r.thm41, kThmKeys, r.thm41_verdict());
    for (auto const & a : r.assumptions)
        o << "  assumption: " << a << "\n";
    return o.str();
}

}  // namespace

char const * to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

Status combine(std::vector<Status> const & statuses)
{
    bool any_fail = false;
    for (auto s : statuses) {
        if (s == Status::Inconclusive)
            return Status::Inconclusive;
        any_fail = any_fail || s == Status::Fail;
    }
    return any_fail ? Status::Fail : Status::Pass;
}

Status VerificationReport::star_verdict() const { return verdict(star, kStarKeys); }
Status VerificationReport::thm41_verdict() const { return verdict(thm41, kThmKeys); }

long label_conductor(std::string const & label)
{
    std::size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i])))
        ++i;
    if (i == 0 || i == label.size() || !std::isalpha(static_cast<unsigned char>(label[i])))
        throw std::invalid_argument("malformed curve label '" + label + "'");
    return std::stol(label.substr(0, i));
}

CurveQ validated_curve(CurveSpec const & spec)
{
    CurveQ E{spec.a[0], spec.a[1], spec.a[2], spec.a[3], spec.a[4]};
    if (!spec.label.empty()) {
        long const n = label_conductor(spec.label);
        if (E.conductor() != n)
            throw std::invalid_argument("label " + spec.label + " says conductor " + std::to_string(n) +
                                        " but the model has conductor " + E.conductor().get_str());
    }
    return E;
}

VerificationReport verify_row(RowInput const & row)
{
    validate_prime(row.p);
    QuadField const K(row.D);
    CurveQ const E = validated_curve(row.curve);

    VerificationReport r;
    r.label = row.curve.label;
    r.coefficients.assign(row.curve.a, row.curve.a + 5);
    r.D = row.D;
    r.p = row.p;
    r.conductor = E.conductor();
    r.kronecker = kronecker(row.D, row.p);
    r.class_number = K.class_number();
    if (E.has_good_reduction(row.p)) {
        r.ap = trace_ap(E, row.p);
        r.ordinary = r.ap % row.p != 0;
    } else {
        r.ap = E.local_data(row.p).bad_ap();
        r.ordinary = true;
    }

    check_star(r, E, K, row.options);
    check_thm41(r, E, K, row.options);

    r.assumptions = {
        "UNCHECKED ASSUMPTION: the modular parametrization is the strong Weil one with Manin constant 1",
        "UNCHECKED ASSUMPTION: p does not divide the number of geometrically connected components of ker pi_*",
        "interpretation: (ii) uses phi(N |d_K|)",
        "interpretation: (e) is evaluated on a multiple of y_K, valid when (b) holds",
        "interpretation: (d) uses Tamagawa numbers; [E0:E1] reported alongside",
    };
    return r;
}

std::map<std::string, CurveSpec> read_curves(std::string const & path)
{
    std::map<std::string, CurveSpec> out;
    for (auto const & c : read_csv(path, "label,a1,a2,a3,a4,a6")) {
        CurveSpec s;
        s.label = c[0];
        for (int i = 0; i < 5; ++i) {
            if (s.a[i].set_str(c[static_cast<std::size_t>(i) + 1], 10) != 0)
                throw std::runtime_error(path + ": bad coefficient '" + c[static_cast<std::size_t>(i) + 1] + "'");
        }
        out[s.label] = s;
    }
    return out;
}

std::vector<GoldenRow> read_golden(std::string const & path)
{
    std::vector<GoldenRow> out;
    for (auto const & c : read_csv(path, "label,D,p,kronecker,ap"))
        out.push_back({c[0], to_long(c[1], "D"), to_long(c[2], "p"), static_cast<int>(to_long(c[3], "kronecker")),
                       to_long(c[4], "ap")});
    return out;
}

TableResult run_table(std::map<std::string, CurveSpec> const & curves, std::vector<GoldenRow> const & rows,
                      Options const & options)
{
    TableResult t;
    for (auto const & g : rows) {
        auto it = curves.find(g.label);
        if (it == curves.end())
            throw std::runtime_error("curve " + g.label + " not in the curve file");
        auto r = verify_row({it->second, g.D, g.p, options});
        std::string const where = g.label + " " + std::to_string(g.D) + " " + std::to_string(g.p);
        if (r.kronecker != g.kronecker)
            t.mismatches.push_back(where + ": kronecker " + std::to_string(r.kronecker) + " != " +
                                   std::to_string(g.kronecker));
        if (r.ap != g.ap)
            t.mismatches.push_back(where + ": a_p " + std::to_string(r.ap) + " != " + std::to_string(g.ap));
        t.reports.push_back(std::move(r));
    }
    return t;
}

std::string emit_report(VerificationReport const & r, Format f)
{
    if (f == Format::Machine)
        return row_json(r).dump() + "\n";
    return text_row(r);
}

std::string emit_table(TableResult const & t, Format f)
{
    std::ostringstream o;
    if (f == Format::Machine) {
        for (auto const & r : t.reports)
            o << row_json(r).dump() << "\n";
        return o.str();
    }
    o << std::left << std::setw(7) << "curve" << std::right << std::setw(5) << "D" << std::setw(6) << "p"
      << std::setw(7) << "(D/p)" << std::setw(6) << "a_p" << "  " << std::left << std::setw(14) << "(*)"
      << "conditions\n";
    for (auto const & r : t.reports)
        o << std::left << std::setw(7) << r.label << std::right << std::setw(5) << r.D << std::setw(6) << r.p
          << std::setw(7) << r.kronecker << std::setw(6) << r.ap << "  " << std::left << std::setw(14)
          << to_string(r.star_verdict()) << to_string(r.thm41_verdict()) << "\n";
    for (auto const & r : t.reports) {
        auto note = [&](char const * group, std::map<std::string, Check> const & m) {
            for (auto const & [k, c] : m)
                if (c.status != Status::Pass)
                    o << r.label << " " << r.D << " " << r.p << " " << group << "." << k << " " << to_string(c.status)
                      << ": " << c.witness << "\n";
        };
        note("star", r.star);
        note("thm41", r.thm41);
    }
    if (t.mismatches.empty())
        o << "golden: " << t.reports.size() << " rows match\n";
    for (auto const & m : t.mismatches)
        o << "golden mismatch: " << m << "\n";
    return o.str();
}

int exit_code(std::vector<VerificationReport> const & reports, bool golden_mismatch)
{
    if (golden_mismatch)
        return 4;
    bool any_fail = false, any_unknown = false;
    for (auto const & r : reports) {
        for (auto v : {r.star_verdict(), r.thm41_verdict()}) {
            any_fail = any_fail || v == Status::Fail;
            any_unknown = any_unknown || v == Status::Inconclusive;
        }
    }
    if (any_fail)
        return 2;
    return any_unknown ? 3 : 0;
}

}  // namespace finesel
