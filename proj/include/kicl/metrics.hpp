#pragma once

#include <string>
#include <vector>

#include "kicl/policy.hpp"
#include "kicl/portfolio.hpp"
#include "kicl/replay.hpp"

namespace kicl::metrics {

// Aligned per-(day, ticker) action and return streams; r values are the
// ticker's contribution to that day's portfolio return.
struct TraceRow {
    int day = 0;
    std::string ticker;
    double a_policy = 0, a_base = 0, p_prev = 0;
    double r_policy = 0, r_base = 0;
    bool fresh = false;
};

struct EvalTrace {
    std::vector<TraceRow> rows;  // sorted by (day, ticker)
};

struct PerfMetrics {
    double cr = 0, sharpe = 0, mdd = 0;
};

// CR, annualized Sharpe (0 when sigma is 0), max drawdown with 1e-8 guard.
PerfMetrics perf_metrics(const std::vector<double>& daily_returns);

struct BetrayalMetrics {
    double uer = 0, drr = 0, bd = 0;
};

BetrayalMetrics betrayal_metrics(const EvalTrace& trace, double tau_entry, double tau_act);

// 1 - Pearson(a, base) over strictly same-sign steps; degenerate cases -> 0.
double correlation_gap(const EvalTrace& trace);

struct WinRate {
    double wr = 0;
    int n_events = 0, n_wins = 0, n_ties = 0;
    std::string flag;
};

// Event = span from a fresh-signal day until the ticker's anchor drops below
// tau_entry or horizon_cap days pass. Wins require strictly higher policy
// span return; ties count as losses.
WinRate event_win_rate(const EvalTrace& policy_trace, const EvalTrace& baseline_trace,
                       int horizon_cap, double tau_entry = 5e-4);

struct EvalReport {
    double cr = 0, sharpe = 0, mdd = 0, wr = 0;
    double uer = 0, drr = 0, bd = 0, cg = 0;
    WinRate wr_detail;
};

struct AblationDeltas {
    double d_return_pct = 0, d_sharpe_pct = 0, mdd_change_pct = 0, d_bd = 0;
    bool anchor_zero = false;
};

// Relative percentage deltas for return/sharpe/mdd, absolute for BD.
AblationDeltas ablation_deltas(const EvalReport& variant, const EvalReport& anchor);

struct ProfitLinkedBetrayal {
    int n_events = 0, n_excess_positive = 0, n_with_hard_betrayal = 0;
    double probability = 0;
    std::string flag;
};

// Among events where the policy out-earns the baseline, the fraction that
// contain at least one UER- or DRR-numerator step.
ProfitLinkedBetrayal profit_linked_betrayal(const EvalTrace& trace, double tau_entry,
                                            double tau_act, int horizon_cap);

// Runs the decoded action stream and the anchor stream through the portfolio
// layer, producing the aligned trace plus daily portfolio return series.
struct AssembledEval {
    EvalTrace trace;
    std::vector<int> days;
    std::vector<double> policy_daily, baseline_daily;
};

AssembledEval assemble_eval(const replay::ReplayBuffer& buffer,
                            const policy::DecodeStream& stream,
                            const portfolio::PortfolioConfig& pcfg);

// Rebuilds daily series by summing per-ticker contributions; the canonical
// path when evaluating a persisted trace.
AssembledEval eval_from_trace(EvalTrace trace);

EvalReport evaluate(const AssembledEval& ev, double tau_entry, double tau_act, int horizon_cap);

struct ReportRow {
    std::string method, split, kol_id;
    EvalReport r;
};

std::string report_to_csv(const std::vector<ReportRow>& rows);

// Plain-text aggregate with best (*) and second-best (^) markers per column.
std::string report_table(const std::vector<ReportRow>& rows);

std::string trace_to_csv(const EvalTrace& trace);
EvalTrace trace_from_csv(const std::string& content);

}  // namespace kicl::metrics
