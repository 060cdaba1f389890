#include "kicl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace kicl::metrics {

PerfMetrics perf_metrics(const std::vector<double>& daily_returns) {
    if (daily_returns.empty()) throw ConfigError("perf_metrics: empty return series");
    PerfMetrics m;

    double equity = 1.0, peak = 0.0, mdd = 0.0;
    double sum = 0.0;
    for (double r : daily_returns) {
        if (r <= -1.0) throw ConfigError("perf_metrics: return <= -1");
        equity *= 1.0 + r;
        peak = std::max(peak == 0.0 ? equity : peak, equity);
        mdd = std::max(mdd, (peak - equity) / (peak + 1e-8));
        sum += r;
    }
    m.cr = equity - 1.0;
    m.mdd = mdd;

    const std::size_t n = daily_returns.size();
    double mean = sum / static_cast<double>(n);
    double sigma = 0.0;
    if (n >= 2) {
        double acc = 0.0;
        for (double r : daily_returns) acc += (r - mean) * (r - mean);
        sigma = std::sqrt(acc / static_cast<double>(n - 1));
    }
    m.sharpe = sigma > 0.0 ? mean / sigma * std::sqrt(252.0) : 0.0;
    return m;
}

BetrayalMetrics betrayal_metrics(const EvalTrace& trace, double tau_entry, double tau_act) {
    if (trace.rows.empty()) throw ConfigError("betrayal_metrics: empty trace");
    BetrayalMetrics m;
    double n_nosig = 0, n_sig = 0, uer_hits = 0, drr_hits = 0, bd_sum = 0;
    for (const TraceRow& r : trace.rows) {
        bool has_signal = std::fabs(r.a_base) >= tau_entry;
        if (has_signal) {
            n_sig += 1;
            if (r.a_base * r.a_policy < 0) drr_hits += 1;
        } else {
            n_nosig += 1;
            if (std::fabs(r.a_policy) > tau_act) uer_hits += 1;
        }
        bd_sum += std::fabs(r.a_policy - r.a_base);
    }
    m.uer = uer_hits / (n_nosig + 1e-8);
    m.drr = drr_hits / (n_sig + 1e-8);
    m.bd = bd_sum / static_cast<double>(trace.rows.size());
    return m;
}

double correlation_gap(const EvalTrace& trace) {
    std::vector<double> a, b;
    for (const TraceRow& r : trace.rows) {
        if (r.a_policy * r.a_base > 0.0) {
            a.push_back(r.a_policy);
            b.push_back(r.a_base);
        }
    }
    const std::size_t n = a.size();
    if (n < 2) return 0.0;
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return 1.0 - sab / std::sqrt(saa * sbb);
}

namespace {

struct EventSpan {
    std::size_t begin = 0, end = 0;  // row indices into a per-ticker row list
};

// Spans never overlap: a fresh day inside an active span extends nothing.
std::vector<EventSpan> segment_events(const std::vector<const TraceRow*>& rows, double tau_entry,
                                      int horizon_cap) {
    std::vector<EventSpan> spans;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (rows[i]->fresh && std::fabs(rows[i]->a_base) >= tau_entry) {
            EventSpan span;
            span.begin = i;
            std::size_t j = i;
            while (j < rows.size() && std::fabs(rows[j]->a_base) >= tau_entry &&
                   j - i < static_cast<std::size_t>(horizon_cap))
                ++j;
            span.end = j;
            spans.push_back(span);
            i = j;
        } else {
            ++i;
        }
    }
    return spans;
}

std::map<std::string, std::vector<const TraceRow*>> rows_by_ticker(const EvalTrace& trace) {
    std::map<std::string, std::vector<const TraceRow*>> out;
    for (const TraceRow& r : trace.rows) out[r.ticker].push_back(&r);
    return out;
}

double span_return(const std::vector<const TraceRow*>& rows, const EventSpan& span,
                   bool policy) {
    double eq = 1.0;
    for (std::size_t i = span.begin; i < span.end; ++i)
        eq *= 1.0 + (policy ? rows[i]->r_policy : rows[i]->r_base);
    return eq - 1.0;
}

}  // namespace

WinRate event_win_rate(const EvalTrace& policy_trace, const EvalTrace& baseline_trace,
                       int horizon_cap, double tau_entry) {
    if (policy_trace.rows.size() != baseline_trace.rows.size())
        throw ConfigError("event_win_rate: misaligned traces (length)");
    for (std::size_t i = 0; i < policy_trace.rows.size(); ++i) {
        const TraceRow& p = policy_trace.rows[i];
        const TraceRow& b = baseline_trace.rows[i];
        if (p.day != b.day || p.ticker != b.ticker)
            throw ConfigError("event_win_rate: misaligned traces (day/ticker)");
    }

    WinRate wr;
    auto by_ticker = rows_by_ticker(policy_trace);
    for (const auto& [ticker, rows] : by_ticker) {
        auto spans = segment_events(rows, tau_entry, horizon_cap);
        for (const EventSpan& span : spans) {
            ++wr.n_events;
            double rp = span_return(rows, span, true);
            double rb = span_return(rows, span, false);
            if (rp > rb)
                ++wr.n_wins;
            else if (rp == rb)
                ++wr.n_ties;
        }
    }
    if (wr.n_events == 0) {
        wr.flag = "no events";
        return wr;
    }
    wr.wr = static_cast<double>(wr.n_wins) / static_cast<double>(wr.n_events);
    if (wr.n_wins == 0 && wr.n_ties == wr.n_events) wr.flag = "all ties";
    return wr;
}

AblationDeltas ablation_deltas(const EvalReport& variant, const EvalReport& anchor) {
    AblationDeltas d;
    d.d_bd = variant.bd - anchor.bd;
    auto rel = [&](double v, double a) {
        if (a == 0.0) {
            d.anchor_zero = true;
            return 0.0;
        }
        return 100.0 * (v - a) / std::fabs(a);
    };
    d.d_return_pct = rel(variant.cr, anchor.cr);
    d.d_sharpe_pct = rel(variant.sharpe, anchor.sharpe);
    d.mdd_change_pct = rel(variant.mdd, anchor.mdd);
    return d;
}

ProfitLinkedBetrayal profit_linked_betrayal(const EvalTrace& trace, double tau_entry,
                                            double tau_act, int horizon_cap) {
    ProfitLinkedBetrayal out;
    auto by_ticker = rows_by_ticker(trace);
    for (const auto& [ticker, rows] : by_ticker) {
        auto spans = segment_events(rows, tau_entry, horizon_cap);
        for (const EventSpan& span : spans) {
            ++out.n_events;
            if (span_return(rows, span, true) <= span_return(rows, span, false)) continue;
            ++out.n_excess_positive;
            bool hard = false;
            for (std::size_t i = span.begin; i < span.end && !hard; ++i) {
                const TraceRow& r = *rows[i];
                bool has_signal = std::fabs(r.a_base) >= tau_entry;
                if (!has_signal && std::fabs(r.a_policy) > tau_act) hard = true;
                if (has_signal && r.a_base * r.a_policy < 0) hard = true;
            }
            if (hard) ++out.n_with_hard_betrayal;
        }
    }
    if (out.n_excess_positive == 0) {
        out.flag = "no excess-positive events";
        return out;
    }
    out.probability =
        static_cast<double>(out.n_with_hard_betrayal) / static_cast<double>(out.n_excess_positive);
    return out;
}

AssembledEval assemble_eval(const replay::ReplayBuffer& buffer,
                            const policy::DecodeStream& stream,
                            const portfolio::PortfolioConfig& pcfg) {
    struct DayCell {
        double action = 0, base = 0, p_prev = 0, ret_next = 0;
        bool fresh = false;
    };
    std::map<int, std::map<std::string, DayCell>> by_day;
    for (std::size_t k = 0; k < stream.idx.size(); ++k) {
        const replay::Transition& t = buffer.transitions[stream.idx[k]];
        DayCell cell;
        cell.action = stream.action[k];
        cell.base = t.baseline_action;
        cell.p_prev = stream.p_prev[k];
        cell.ret_next = t.ret_next;
        cell.fresh = t.fresh_event;
        by_day[t.trading_day][t.ticker] = cell;
    }

    AssembledEval out;
    portfolio::PortfolioState pol_state, base_state;
    portfolio::PortfolioState pol_drifted, base_drifted;
    bool have_prev = false;

    for (const auto& [day, cells] : by_day) {
        std::map<std::string, double> pol_scores, base_scores, rets;
        for (const auto& [ticker, c] : cells) {
            pol_scores[ticker] = c.action;
            base_scores[ticker] = c.base;
            rets[ticker] = c.ret_next;
        }
        pol_state = portfolio::alloc(pol_scores, pol_state, pcfg);
        base_state = portfolio::alloc(base_scores, base_state, pcfg);

        // Carried positions on tickers with no row today (ragged ingested
        // data) mark time at zero return rather than erroring out.
        for (const auto& [ticker, w] : pol_state.weights)
            if (!rets.count(ticker)) rets[ticker] = 0.0;
        for (const auto& [ticker, w] : base_state.weights)
            if (!rets.count(ticker)) rets[ticker] = 0.0;

        auto pr = portfolio::step_pnl(pol_state, rets, pcfg.cost_rate,
                                      have_prev ? &pol_drifted : nullptr);
        auto br = portfolio::step_pnl(base_state, rets, pcfg.cost_rate,
                                      have_prev ? &base_drifted : nullptr);

        // The trace compares decode-level actions against the stored anchor;
        // gross rescaling only touches the equity series. Per-ticker return
        // contributions mirror the portfolio accounting so span returns stay
        // consistent with the daily series.
        for (const auto& [ticker, c] : cells) {
            TraceRow row;
            row.day = day;
            row.ticker = ticker;
            row.a_policy = c.action;
            row.a_base = c.base;
            row.p_prev = c.p_prev;
            row.fresh = c.fresh;
            double pol_w = pol_state.weights.count(ticker) ? pol_state.weights.at(ticker) : 0.0;
            double base_w = base_state.weights.count(ticker) ? base_state.weights.at(ticker) : 0.0;
            double pol_prev = have_prev && pol_drifted.weights.count(ticker)
                                  ? pol_drifted.weights.at(ticker)
                                  : 0.0;
            double base_prev = have_prev && base_drifted.weights.count(ticker)
                                   ? base_drifted.weights.at(ticker)
                                   : 0.0;
            row.r_policy = pol_w * c.ret_next - pcfg.cost_rate * std::fabs(pol_w - pol_prev);
            row.r_base = base_w * c.ret_next - pcfg.cost_rate * std::fabs(base_w - base_prev);
            out.trace.rows.push_back(std::move(row));
        }

        out.days.push_back(day);
        out.policy_daily.push_back(pr.r_t);
        out.baseline_daily.push_back(br.r_t);
        pol_drifted = pr.next;
        base_drifted = br.next;
        pol_state = pr.next;
        base_state = br.next;
        have_prev = true;
    }
    return out;
}

AssembledEval eval_from_trace(EvalTrace trace) {
    std::stable_sort(trace.rows.begin(), trace.rows.end(),
                     [](const TraceRow& a, const TraceRow& b) {
                         if (a.day != b.day) return a.day < b.day;
                         return a.ticker < b.ticker;
                     });
    AssembledEval out;
    for (const TraceRow& r : trace.rows) {
        if (out.days.empty() || out.days.back() != r.day) {
            out.days.push_back(r.day);
            out.policy_daily.push_back(0.0);
            out.baseline_daily.push_back(0.0);
        }
        out.policy_daily.back() += r.r_policy;
        out.baseline_daily.back() += r.r_base;
    }
    out.trace = std::move(trace);
    return out;
}

EvalReport evaluate(const AssembledEval& ev, double tau_entry, double tau_act, int horizon_cap) {
    EvalReport rep;
    PerfMetrics perf = perf_metrics(ev.policy_daily);
    rep.cr = perf.cr;
    rep.sharpe = perf.sharpe;
    rep.mdd = perf.mdd;
    BetrayalMetrics bm = betrayal_metrics(ev.trace, tau_entry, tau_act);
    rep.uer = bm.uer;
    rep.drr = bm.drr;
    rep.bd = bm.bd;
    rep.cg = correlation_gap(ev.trace);

    EvalTrace baseline_trace = ev.trace;
    for (TraceRow& r : baseline_trace.rows) {
        r.a_policy = r.a_base;
        r.r_policy = r.r_base;
    }
    rep.wr_detail = event_win_rate(ev.trace, baseline_trace, horizon_cap, tau_entry);
    rep.wr = rep.wr_detail.wr;
    return rep;
}

std::string report_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = "method,split,kol_id,ret,sharpe,mdd,wr,uer,drr,bd,cg\n";
    for (const ReportRow& row : rows) {
        out += row.method + ',' + row.split + ',' + row.kol_id;
        for (double v : {row.r.cr, row.r.sharpe, row.r.mdd, row.r.wr, row.r.uer, row.r.drr,
                         row.r.bd, row.r.cg}) {
            out += ',';
            out += util::format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string report_table(const std::vector<ReportRow>& rows) {
    struct Col {
        const char* name;
        bool higher_better;
        double EvalReport::* field;
    };
    static const Col cols[] = {
        {"ret", true, &EvalReport::cr},   {"sharpe", true, &EvalReport::sharpe},
        {"mdd", false, &EvalReport::mdd}, {"wr", true, &EvalReport::wr},
        {"uer", false, &EvalReport::uer}, {"drr", false, &EvalReport::drr},
        {"bd", false, &EvalReport::bd},   {"cg", false, &EvalReport::cg},
    };

    std::ostringstream out;
    std::map<std::string, std::vector<const ReportRow*>> by_split;
    for (const ReportRow& r : rows) by_split[r.split].push_back(&r);

    for (const auto& [split, group] : by_split) {
        out << "== split: " << split << " ==\n";
        out << "method";
        for (const Col& c : cols) out << '\t' << c.name;
        out << '\n';
        for (const ReportRow* r : group) {
            out << r->method;
            for (const Col& c : cols) {
                double v = r->r.*c.field;
                // rank within the group
                int better = 0;
                for (const ReportRow* other : group) {
                    if (other == r) continue;
                    double w = other->r.*c.field;
                    if (c.higher_better ? w > v : w < v) ++better;
                }
                char buf[48];
                std::snprintf(buf, sizeof buf, "%.4f", v);
                out << '\t' << buf << (better == 0 ? "*" : better == 1 ? "^" : "");
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string trace_to_csv(const EvalTrace& trace) {
    std::string out = "day,ticker,a_policy,a_base,p_prev,r_policy,r_base,fresh\n";
    for (const TraceRow& r : trace.rows) {
        out += std::to_string(r.day) + ',' + r.ticker;
        for (double v : {r.a_policy, r.a_base, r.p_prev, r.r_policy, r.r_base}) {
            out += ',';
            out += util::format_double(v);
        }
        out += ',';
        out += r.fresh ? '1' : '0';
        out += '\n';
    }
    return out;
}

EvalTrace trace_from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("trace csv: empty file");
    EvalTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cols = util::split_csv_line(line);
        if (cols.size() != 8) throw ConfigError("trace csv: expected 8 columns: " + line);
        TraceRow r;
        r.day = static_cast<int>(util::parse_long(cols[0], "day"));
        r.ticker = cols[1];
        r.a_policy = util::parse_double(cols[2], "a_policy");
        r.a_base = util::parse_double(cols[3], "a_base");
        r.p_prev = util::parse_double(cols[4], "p_prev");
        r.r_policy = util::parse_double(cols[5], "r_policy");
        r.r_base = util::parse_double(cols[6], "r_base");
        r.fresh = cols[7] == "1";
        trace.rows.push_back(std::move(r));
    }
    return trace;
}

}  // namespace kicl::metrics
