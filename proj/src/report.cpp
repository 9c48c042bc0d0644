#include "hermeig/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hermeig {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else out += c;
        }
    }
    return out;
}

void emit_record_json(std::ostringstream& os, const ConvergenceRecord& rec) {
    os << "{\"parameter\":\"" << json_escape(rec.parameter) << "\",\"samples\":[";
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        if (i) os << ",";
        os << "[" << format_number(rec.samples[i].first) << "," << format_number(rec.samples[i].second) << "]";
    }
    os << "],\"extrapolated\":" << format_number(rec.extrapolated);
    os << ",\"order\":" << format_number(rec.order);
    os << ",\"order_measured\":" << (rec.order_measured ? "true" : "false");
    os << ",\"converged\":" << (rec.converged ? "true" : "false") << "}";
}

void sort_reports(std::vector<CheckReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& x, const CheckReport& y) {
        if (x.id != y.id) return static_cast<int>(x.id) < static_cast<int>(y.id);
        return x.domain_id < y.domain_id;
    });
}

}  // namespace

bool all_checks_pass(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (r.status == CheckStatus::Fail || r.status == CheckStatus::Error) return false;
    return true;
}

std::string emit_report(std::vector<CheckReport> reports, ReportFormat format) {
    sort_reports(reports);
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Json: {
            os << "{\"reports\":[";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const CheckReport& r = reports[i];
                if (i) os << ",";
                os << "{\"check_id\":\"" << check_id_name(r.id) << "\"";
                os << ",\"domain_id\":\"" << json_escape(r.domain_id) << "\"";
                os << ",\"lhs\":" << format_number(r.lhs);
                os << ",\"rhs\":" << format_number(r.rhs);
                os << ",\"margin\":" << format_number(r.margin);
                os << ",\"tolerance\":" << format_number(r.tolerance);
                os << ",\"status\":\"" << check_status_name(r.status) << "\"";
                os << ",\"evidence\":[";
                for (std::size_t e = 0; e < r.evidence.size(); ++e) {
                    if (e) os << ",";
                    emit_record_json(os, r.evidence[e]);
                }
                os << "],\"settings\":{";
                auto settings = r.settings;
                std::stable_sort(settings.begin(), settings.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                for (std::size_t s = 0; s < settings.size(); ++s) {
                    if (s) os << ",";
                    os << "\"" << json_escape(settings[s].first) << "\":\"" << json_escape(settings[s].second)
                       << "\"";
                }
                os << "}";
                if (!r.note.empty()) os << ",\"note\":\"" << json_escape(r.note) << "\"";
                os << "}";
            }
            os << "],\"all_pass\":" << (all_checks_pass(reports) ? "true" : "false") << "}\n";
            break;
        }
        case ReportFormat::Csv: {
            os << "check_id,domain_id,lhs,rhs,margin,tolerance,status,note\n";
            for (const CheckReport& r : reports) {
                std::string dom = r.domain_id, note = r.note;
                std::replace(dom.begin(), dom.end(), ',', ';');
                std::replace(note.begin(), note.end(), ',', ';');
                os << check_id_name(r.id) << "," << dom << "," << format_number(r.lhs) << ","
                   << format_number(r.rhs) << "," << format_number(r.margin) << ","
                   << format_number(r.tolerance) << "," << check_status_name(r.status) << "," << note << "\n";
            }
            break;
        }
        case ReportFormat::Text: {
            for (const CheckReport& r : reports) {
                char line[512];
                std::snprintf(line, sizeof(line), "[%-18s] %-36s %-8s lhs=%-14s rhs=%-14s margin=%s\n",
                              check_id_name(r.id), r.domain_id.c_str(), check_status_name(r.status),
                              format_number(r.lhs).c_str(), format_number(r.rhs).c_str(),
                              format_number(r.margin).c_str());
                os << line;
                if (!r.note.empty()) os << "    note: " << r.note << "\n";
            }
            os << (all_checks_pass(reports) ? "ALL CHECKS PASS\n" : "CHECK FAILURES PRESENT\n");
            break;
        }
    }
    return os.str();
}

}  // namespace hermeig
