#pragma once

// Per-row verification of the (*) hypotheses and the five conditions on
// Heegner points, the table driver, and report serialization.

#include "finesel/ellq.hpp"
#include "finesel/quadfield.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace finesel {

enum class Status { Pass, Fail, Inconclusive };

char const * to_string(Status s);

struct Check {
    Status status = Status::Inconclusive;
    std::string witness;
};

struct Options {
    int precision = 40;     // decimal digits for the Heegner trace
    long ell_max = 1000;    // Frobenius sample bound for surjectivity
    long aux_bound = 10000; // auxiliary prime bound for p-indivisibility
    int local_precision = 12;
};

struct CurveSpec {
    std::string label;  // may be empty
    Integer a[5];
};

struct RowInput {
    CurveSpec curve;
    i64 D = 0;
    long p = 0;
    Options options;
};

struct VerificationReport {
    std::string label;
    std::vector<Integer> coefficients;
    i64 D = 0;
    long p = 0;
    Integer conductor;
    int kronecker = 0;
    long ap = 0;
    bool ordinary = true;
    long class_number = 0;

    // keys i, ii, iii, iva, ivb, ivc and a, b, c, d, e
    std::map<std::string, Check> star, thm41;
    std::vector<std::string> assumptions;

    Status star_verdict() const;
    Status thm41_verdict() const;
};

/// Combined verdict: Inconclusive dominates, then Fail.
Status combine(std::vector<Status> const & statuses);

/// Numeric prefix of a curve label ("11a1" -> 11).
long label_conductor(std::string const & label);

/// Validates the row and builds the curve; throws on invalid input
/// (singular or non-minimal model, label/conductor mismatch, bad D or p).
CurveQ validated_curve(CurveSpec const & spec);

VerificationReport verify_row(RowInput const & row);

/// label -> coefficients from a `label,a1,a2,a3,a4,a6` CSV.
std::map<std::string, CurveSpec> read_curves(std::string const & path);

struct GoldenRow {
    std::string label;
    i64 D = 0;
    long p = 0;
    int kronecker = 0;
    long ap = 0;
};

std::vector<GoldenRow> read_golden(std::string const & path);

struct TableResult {
    std::vector<VerificationReport> reports;
    std::vector<std::string> mismatches;
};

TableResult run_table(std::map<std::string, CurveSpec> const & curves, std::vector<GoldenRow> const & rows,
                      Options const & options = {});

enum class Format { Text, Machine };

std::string emit_report(VerificationReport const & r, Format f);
std::string emit_table(TableResult const & t, Format f);

/// 0 all pass, 2 any fail, 3 any inconclusive, 4 golden mismatch.
int exit_code(std::vector<VerificationReport> const & reports, bool golden_mismatch = false);

}  // namespace finesel
