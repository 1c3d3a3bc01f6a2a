#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qdom {

// Permeability family kappa = 1/zeta^2.
// axis:      zeta = x^n
// dihedral:  zeta = (z^s + zbar^s)^n (z^s - zbar^s)^l, s >= 1, n > l >= 0
// deformed:  Wronskian-ratio zeta from a strictly increasing harmonic sequence,
//            phases as integer multiples of pi/2
struct MediumSpec {
    enum class Family { Axis, Dihedral, Deformed };
    Family family = Family::Axis;
    int n = 0;          // axis n / dihedral n
    int s = 1, l = 0;   // dihedral only
    std::vector<int> kseq;            // deformed harmonics
    std::vector<long> quarter_phases; // deformed phases, units of pi/2

    static MediumSpec axis(int n) {
        if (n < 0) throw ValidationError("axis medium requires n >= 0");
        MediumSpec m;
        m.family = Family::Axis;
        m.n = n;
        return m;
    }
    static MediumSpec dihedral(int s, int n, int l) {
        if (s < 1 || l < 0 || n <= l) throw ValidationError("dihedral medium requires s >= 1, n > l >= 0");
        MediumSpec m;
        m.family = Family::Dihedral;
        m.s = s; m.n = n; m.l = l;
        return m;
    }
    static MediumSpec deformed(std::vector<int> kseq, std::vector<long> quarter_phases) {
        if (kseq.empty() || kseq.size() != quarter_phases.size())
            throw ValidationError("deformed medium requires matching k and phase sequences");
        for (size_t i = 0; i < kseq.size(); ++i) {
            if (kseq[i] < 0) throw ValidationError("deformed harmonics must be non-negative");
            if (i > 0 && kseq[i] <= kseq[i - 1])
                throw ValidationError("deformed harmonics must be strictly increasing");
        }
        MediumSpec m;
        m.family = Family::Deformed;
        m.n = static_cast<int>(kseq.size());
        m.kseq = std::move(kseq);
        m.quarter_phases = std::move(quarter_phases);
        return m;
    }

    // "axis:n" | "dihedral:s,n,l" | "deformed:k1,k2,..:w1,w2,.."
    static MediumSpec parse(const std::string& text) {
        auto colon = text.find(':');
        if (colon == std::string::npos) throw ValidationError("malformed medium string: " + text);
        std::string head = text.substr(0, colon), rest = text.substr(colon + 1);
        auto split_ints = [](const std::string& s) {
            std::vector<long> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) {
                size_t pos = 0;
                long v = std::stol(item, &pos);
                if (pos != item.size()) throw ValidationError("malformed integer: " + item);
                out.push_back(v);
            }
            return out;
        };
        try {
            if (head == "axis") {
                auto v = split_ints(rest);
                if (v.size() != 1) throw ValidationError("axis medium takes one parameter");
                return axis(static_cast<int>(v[0]));
            }
            if (head == "dihedral") {
                auto v = split_ints(rest);
                if (v.size() != 3) throw ValidationError("dihedral medium takes s,n,l");
                return dihedral(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
            }
            if (head == "deformed") {
                auto colon2 = rest.find(':');
                if (colon2 == std::string::npos)
                    throw ValidationError("deformed medium takes k1,..:w1,..");
                auto ks = split_ints(rest.substr(0, colon2));
                auto ws = split_ints(rest.substr(colon2 + 1));
                std::vector<int> ki(ks.begin(), ks.end());
                return deformed(ki, ws);
            }
        } catch (const std::invalid_argument&) {
            throw ValidationError("malformed medium string: " + text);
        } catch (const std::out_of_range&) {
            throw ValidationError("malformed medium string: " + text);
        }
        throw ValidationError("unknown medium family: " + head);
    }

    std::string str() const {
        std::ostringstream os;
        switch (family) {
            case Family::Axis: os << "axis:" << n; break;
            case Family::Dihedral: os << "dihedral:" << s << "," << n << "," << l; break;
            case Family::Deformed:
                os << "deformed:";
                for (size_t i = 0; i < kseq.size(); ++i) os << (i ? "," : "") << kseq[i];
                os << ":";
                for (size_t i = 0; i < quarter_phases.size(); ++i) os << (i ? "," : "") << quarter_phases[i];
                break;
        }
        return os.str();
    }
};

} // namespace qdom
