#include "sparsetsp/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sparsetsp {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

const char* to_string(Feasibility f) {
    switch (f) {
        case Feasibility::kFeasible: return "feasible";
        case Feasibility::kInfeasible: return "infeasible";
        case Feasibility::kUnknown: return "unknown";
    }
    return "?";
}

Feasibility feasibility_from(const std::string& s) {
    if (s == "feasible") return Feasibility::kFeasible;
    if (s == "infeasible") return Feasibility::kInfeasible;
    if (s == "unknown") return Feasibility::kUnknown;
    throw ParseError("bad feasibility value: " + s);
}

}  // namespace

double EvaluationReport::ratio() const {
    if (!l_hat) return std::numeric_limits<double>::infinity();
    return static_cast<double>(*l_hat) / static_cast<double>(l_opt);
}

EvaluationReport evaluate_instance(const Instance& inst,
                                   const SparsifiedInstance& s,
                                   const EvaluationBudget& budget,
                                   const std::vector<Tour>& known_tours) {
    EvaluationReport rep;
    rep.instance = inst.name();
    rep.n = inst.n();
    rep.m = inst.complete_edge_count();
    rep.m_hat = static_cast<std::int64_t>(s.m_hat());
    rep.pruning_rate = s.pruning_rate();

    // Original optimum.
    double t0 = now_seconds();
    if (inst.n() <= kHeldKarpCap) {
        Tour t = held_karp(inst);
        rep.l_opt = t.length;
        rep.l_opt_proven = true;
    } else {
        BranchAndCutOptions opts;
        opts.lp_solve_budget = budget.lp_solve_budget;
        BranchAndCutResult r = branch_and_cut(inst, opts);
        if (!r.tour) throw ValidationError("exact solve found no tour");
        rep.l_opt = r.tour->length;
        rep.l_opt_proven = r.proven;
        rep.lp_solves_original = r.lp_solves;
    }
    rep.seconds_original = now_seconds() - t0;

    // Restricted optimum on the retained edges (same vertex set).
    Instance restricted = s.to_instance();
    t0 = now_seconds();
    if (inst.n() <= kHeldKarpCap) {
        auto t = held_karp_restricted(restricted);
        if (t) {
            rep.l_hat = t->length;
            rep.l_hat_proven = true;
            rep.feasible = Feasibility::kFeasible;
        } else {
            rep.feasible = Feasibility::kInfeasible;
            rep.l_hat_proven = true;
        }
    } else {
        BranchAndCutOptions opts;
        opts.lp_solve_budget = budget.lp_solve_budget;
        opts.use_double_tree_start = false;
        for (const Tour& t : known_tours) {
            if (!opts.initial_tour || t.length < opts.initial_tour->length)
                opts.initial_tour = t;
        }
        BranchAndCutResult r = branch_and_cut(restricted, opts);
        rep.lp_solves_pruned = r.lp_solves;
        if (r.tour) {
            rep.l_hat = r.tour->length;
            rep.l_hat_proven = r.proven;
            rep.feasible = Feasibility::kFeasible;
        } else if (r.infeasible) {
            rep.feasible = Feasibility::kInfeasible;
            rep.l_hat_proven = true;
        } else {
            rep.feasible = Feasibility::kUnknown;
        }
    }
    rep.seconds_pruned = now_seconds() - t0;
    return rep;
}

void write_report_csv(const std::vector<EvaluationReport>& reports,
                      std::ostream& out, bool include_timing) {
    out << "instance,n,m,m_hat,pruning_rate,feasible,l_opt,l_opt_proven,"
           "l_hat,l_hat_proven,ratio,lp_solves_original,lp_solves_pruned";
    if (include_timing) out << ",seconds_original,seconds_pruned";
    out << '\n';
    char buf[64];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%.12g", r.pruning_rate);
        out << r.instance << ',' << r.n << ',' << r.m << ',' << r.m_hat << ','
            << buf << ',' << to_string(r.feasible) << ',' << r.l_opt << ','
            << (r.l_opt_proven ? 1 : 0) << ',';
        if (r.l_hat) out << *r.l_hat;
        out << ',' << (r.l_hat_proven ? 1 : 0) << ',';
        if (r.l_hat) {
            std::snprintf(buf, sizeof buf, "%.12g", r.ratio());
            out << buf;
        } else {
            out << "inf";
        }
        out << ',' << r.lp_solves_original << ',' << r.lp_solves_pruned;
        if (include_timing) {
            std::snprintf(buf, sizeof buf, "%.3f,%.3f", r.seconds_original,
                          r.seconds_pruned);
            out << ',' << buf;
        }
        out << '\n';
    }
}

std::vector<EvaluationReport> read_report_csv(std::istream& in) {
    std::vector<EvaluationReport> reports;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty report CSV");
    if (line.rfind("instance,n,m,m_hat,pruning_rate,feasible,", 0) != 0)
        throw ParseError("unexpected report CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 13) throw ParseError("report CSV row too short");
        EvaluationReport r;
        r.instance = cells[0];
        r.n = std::stoi(cells[1]);
        r.m = std::stoll(cells[2]);
        r.m_hat = std::stoll(cells[3]);
        r.pruning_rate = std::stod(cells[4]);
        r.feasible = feasibility_from(cells[5]);
        r.l_opt = std::stoll(cells[6]);
        r.l_opt_proven = cells[7] == "1";
        if (!cells[8].empty()) r.l_hat = std::stoll(cells[8]);
        r.l_hat_proven = cells[9] == "1";
        r.lp_solves_original = std::stoll(cells[11]);
        r.lp_solves_pruned = std::stoll(cells[12]);
        if (cells.size() >= 15) {
            r.seconds_original = std::stod(cells[13]);
            r.seconds_pruned = std::stod(cells[14]);
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

SummaryRow aggregate_summary(const std::vector<EvaluationReport>& reports,
                             const std::vector<double>& bounds) {
    if (reports.empty())
        throw ValidationError("cannot summarize an empty report list");
    SummaryRow s;
    s.bounds = bounds;
    s.bound_counts.assign(bounds.size(), 0);
    s.count = reports.size();
    double ratio_sum = 0;
    std::size_t feasible_count = 0;
    for (const auto& r : reports) {
        s.mean_pruning += r.pruning_rate;
        if (!r.l_opt_proven || (r.l_hat && !r.l_hat_proven)) ++s.unproven;
        if (!r.l_hat) {
            ++s.infeasible;
            s.has_infeasible = true;
            continue;
        }
        ++feasible_count;
        double ratio = r.ratio();
        ratio_sum += ratio;
        s.max_ratio = std::max(s.max_ratio, ratio);
        for (std::size_t b = 0; b < bounds.size(); ++b) {
            if (bounds[b] == 1.0 ? ratio <= 1.0 + 1e-12 : ratio < bounds[b])
                ++s.bound_counts[b];
        }
    }
    s.mean_pruning /= static_cast<double>(s.count);
    s.mean_ratio = feasible_count ? ratio_sum / feasible_count : 0.0;
    return s;
}

void write_summary_csv(const SummaryRow& s, std::ostream& out) {
    out << "count,infeasible,unproven,mean_pruning,mean_ratio,max_ratio";
    char buf[64];
    for (double b : s.bounds) {
        std::snprintf(buf, sizeof buf, "%g", b);
        out << ",count_" << (b == 1.0 ? "eq_1" : std::string("lt_") + buf);
    }
    out << '\n';
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", s.mean_pruning, s.mean_ratio);
    out << s.count << ',' << s.infeasible << ',' << s.unproven << ',' << buf
        << ',';
    if (s.has_infeasible) {
        out << "inf";
    } else {
        std::snprintf(buf, sizeof buf, "%.12g", s.max_ratio);
        out << buf;
    }
    for (std::size_t c : s.bound_counts) out << ',' << c;
    out << '\n';
}

std::string summary_to_string(const SummaryRow& s) {
    std::ostringstream out;
    out << "instances:        " << s.count << "\n";
    out << "infeasible:       " << s.infeasible << "\n";
    out << "unproven solves:  " << s.unproven << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", s.mean_pruning);
    out << "mean pruning:     " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.6f", s.mean_ratio);
    out << "mean ratio:       " << buf << "\n";
    if (s.has_infeasible) {
        out << "worst ratio:      inf\n";
    } else {
        std::snprintf(buf, sizeof buf, "%.6f", s.max_ratio);
        out << "worst ratio:      " << buf << "\n";
    }
    for (std::size_t b = 0; b < s.bounds.size(); ++b) {
        std::snprintf(buf, sizeof buf, "%g", s.bounds[b]);
        out << "count(" << (s.bounds[b] == 1.0 ? "= 1" : std::string("< ") + buf)
            << "):      " << s.bound_counts[b] << "\n";
    }
    return out.str();
}

}  // namespace sparsetsp
