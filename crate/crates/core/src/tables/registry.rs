// Expected values of the published tables, frozen as data. Each entry names
// the table and row it comes from so a failing diff points straight at it.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::propagate::Mode;

/// The six worked examples, in the order they are published.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Example {
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
}

impl Example {
    pub const ALL: [Example; 6] = [
        Example::Ex1,
        Example::Ex2,
        Example::Ex3,
        Example::Ex4,
        Example::Ex5,
        Example::Ex6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Example::Ex1 => "ex1",
            Example::Ex2 => "ex2",
            Example::Ex3 => "ex3",
            Example::Ex4 => "ex4",
            Example::Ex5 => "ex5",
            Example::Ex6 => "ex6",
        }
    }

    /// One-line description of the source code of the example.
    pub fn description(self) -> &'static str {
        match self {
            Example::Ex1 => "Goethals-parameter (63,7) code of size 2^47: averaging bounds",
            Example::Ex2 => "Preparata-parameter (63,5) code of size 2^52: averaging bounds",
            Example::Ex3 => "[31,13,9] matrix code and its [29,11] shortening: coset sweeps",
            Example::Ex4 => "BCH (31,11) code and its shortenings: coset sweeps",
            Example::Ex5 => "[31,7,13] matrix code: extend-mode coset sweep",
            Example::Ex6 => "punctured first-order Reed-Muller (31,15) code: coset sweeps",
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown example {s:?}; expected ex1..ex6")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    Ineq,
    Scalar,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
            TableId::VI => "VI",
            TableId::VII => "VII",
            TableId::Ineq => "ineq",
            TableId::Scalar => "scalar",
        })
    }
}

/// Which column of a table the value sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    /// Averaging bound.
    Avg,
    /// Best translate found by search.
    Max,
    /// Previously published lower bound, kept for comparison only.
    Prior,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::Avg => "M_avg",
            Column::Max => "M_max",
            Column::Prior => "prior",
        })
    }
}

/// Typesetting of the published value: bold marks a new record, an
/// asterisk ties the best code known at the time. Reporting metadata only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    Plain,
    Bold,
    Asterisk,
}

/// Source codes that the sweeps run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// BCH (31,11) with the last `shorten` positions shortened.
    Bch31 { shorten: usize },
    /// RM(1,5) punctured at the last position.
    Rm32Punctured,
    /// Generator matrix loaded from a data file, then shortened.
    Matrix { file: &'static str, shorten: usize },
}

pub const MATRIX_31_13: &str = "grassl_31_13_9.txt";
pub const MATRIX_31_7: &str = "grassl_31_7_13.txt";

/// [n, k, d] a matrix file must have to stand in for its table rows.
pub fn matrix_parameters(file: &str) -> Option<(usize, usize, usize)> {
    match file {
        MATRIX_31_13 => Some((31, 13, 9)),
        MATRIX_31_7 => Some((31, 7, 13)),
        _ => None,
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Bch31 { shorten: 0 } => write!(f, "bch-5-11"),
            Source::Bch31 { shorten } => write!(f, "bch-5-11-shorten{shorten}"),
            Source::Rm32Punctured => write!(f, "rm1-5-puncture1"),
            Source::Matrix { file, shorten: 0 } => write!(f, "{file}"),
            Source::Matrix { file, shorten } => write!(f, "{file}-shorten{shorten}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Computation {
    /// Averaging bound from a code of length n, size 2^log2_size and
    /// distance d; `extended` selects the length-(n+1) variant.
    Bound {
        n: usize,
        log2_size: u32,
        d: usize,
        extended: bool,
    },
    /// Best translate over the listed (source, mode) routes; the value is
    /// the maximum over them.
    Sweep { routes: Vec<(Source, Mode)> },
    /// Carried for reporting only.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    ExactBound,
    ExhaustiveSweep,
    ConditionalOnMatrix,
    OutOfScope(&'static str),
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::ExactBound => "exact-bound",
            Class::ExhaustiveSweep => "exhaustive-sweep",
            Class::ConditionalOnMatrix => "conditional-on-matrix",
            Class::OutOfScope(_) => "out-of-scope",
        })
    }
}

/// One published lower bound on A(n, d, w).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedEntry {
    pub example: Example,
    pub table: TableId,
    pub column: Column,
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub value: u64,
    pub mark: Mark,
    pub provenance: String,
    pub computation: Computation,
    pub class: Class,
}

impl ExpectedEntry {
    pub fn label(&self) -> String {
        format!("A({},{},{})", self.n, self.d, self.w)
    }
}

const PRIOR_REASON: &str = "previously published bound from another construction; comparison only";
const MAX_REASON: &str = "needs a search over translates of a code of size 2^52";

struct Builder {
    example: Example,
    entries: Vec<ExpectedEntry>,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        table: TableId,
        column: Column,
        (n, d, w): (usize, usize, usize),
        value: u64,
        mark: Mark,
        provenance: String,
        computation: Computation,
        class: Class,
    ) {
        self.entries.push(ExpectedEntry {
            example: self.example,
            table,
            column,
            n,
            d,
            w,
            value,
            mark,
            provenance,
            computation,
            class,
        });
    }

    fn bound(
        &mut self,
        table: TableId,
        (n, d, w): (usize, usize, usize),
        value: u64,
        mark: Mark,
        source: (usize, u32, usize),
    ) {
        let (sn, log2_size, sd) = source;
        let extended = n == sn + 1;
        let provenance = match table {
            TableId::Ineq => format!("shortened-code inequality, A({n},{d},{w})"),
            _ => format!("Table {table}, A({n},{d},w) M_avg, w={w}"),
        };
        self.push(
            table,
            Column::Avg,
            (n, d, w),
            value,
            mark,
            provenance,
            Computation::Bound {
                n: sn,
                log2_size,
                d: sd,
                extended,
            },
            Class::ExactBound,
        );
    }

    fn sweep(
        &mut self,
        table: TableId,
        (n, d, w): (usize, usize, usize),
        value: u64,
        mark: Mark,
        routes: &[(Source, Mode)],
    ) {
        let conditional = routes
            .iter()
            .any(|(s, _)| matches!(s, Source::Matrix { .. }));
        let provenance = match table {
            TableId::Scalar => format!("{} listed bound, A({n},{d},{w})", self.example),
            _ => format!("Table {table}, A({n},{d},w) M_max, w={w}"),
        };
        self.push(
            table,
            Column::Max,
            (n, d, w),
            value,
            mark,
            provenance,
            Computation::Sweep {
                routes: routes.to_vec(),
            },
            if conditional {
                Class::ConditionalOnMatrix
            } else {
                Class::ExhaustiveSweep
            },
        );
    }

    fn reference(
        &mut self,
        table: TableId,
        column: Column,
        (n, d, w): (usize, usize, usize),
        value: u64,
        mark: Mark,
        reason: &'static str,
    ) {
        let provenance = match (table, column) {
            (TableId::Ineq, _) => {
                format!("earlier bound quoted with the inequality for A({n},{d},{w})")
            }
            (_, Column::Prior) => format!("Table {table}, A({n},{d},w) M_RS, w={w}"),
            _ => format!("Table {table}, A({n},{d},w) {column}, w={w}"),
        };
        self.push(
            table,
            column,
            (n, d, w),
            value,
            mark,
            provenance,
            Computation::None,
            Class::OutOfScope(reason),
        );
    }
}

fn mark(c: char) -> Mark {
    match c {
        'b' => Mark::Bold,
        '*' => Mark::Asterisk,
        _ => Mark::Plain,
    }
}

fn build() -> Vec<ExpectedEntry> {
    use Mode::{Extend, Fixed};
    let mut all = Vec::new();

    // ex1: (63,7) code of size 2^47.
    let mut b = Builder {
        example: Example::Ex1,
        entries: Vec::new(),
    };
    let t1_63 = [
        8443, 59096, 361141, 1950158, 9396214, 40716926, 159735632, 570484400,
    ];
    let t1_64 = [
        9480, 67538, 420236, 2311298, 11346372, 50113140, 200452558, 730220032,
    ];
    for (i, w) in (7..=14).enumerate() {
        b.bound(TableId::I, (63, 8, w), t1_63[i], Mark::Bold, (63, 47, 7));
    }
    for (i, w) in (7..=14).enumerate() {
        b.bound(TableId::I, (64, 8, w), t1_64[i], Mark::Bold, (63, 47, 7));
    }
    b.reference(
        TableId::I,
        Column::Prior,
        (63, 8, 7),
        7182,
        Mark::Plain,
        PRIOR_REASON,
    );
    b.reference(
        TableId::I,
        Column::Prior,
        (63, 8, 8),
        50274,
        Mark::Plain,
        PRIOR_REASON,
    );
    b.reference(
        TableId::I,
        Column::Prior,
        (64, 8, 7),
        8064,
        Mark::Plain,
        PRIOR_REASON,
    );
    b.reference(
        TableId::I,
        Column::Prior,
        (64, 8, 8),
        57456,
        Mark::Plain,
        PRIOR_REASON,
    );
    for (i, (value, prior)) in [(7505, 6693), (6657, 6223), (5894, 5770)]
        .into_iter()
        .enumerate()
    {
        let n = 62 - i;
        b.bound(
            TableId::Ineq,
            (n, 8, 7),
            value,
            Mark::Plain,
            (n, 46 - i as u32, 7),
        );
        b.reference(
            TableId::Ineq,
            Column::Prior,
            (n, 8, 7),
            prior,
            Mark::Plain,
            PRIOR_REASON,
        );
    }
    all.extend(b.entries);

    // ex2: (63,5) code of size 2^52. Columns: M_avg, M_max, M_RS (0 = none).
    let mut b = Builder {
        example: Example::Ex2,
        entries: Vec::new(),
    };
    let t2: [(u64, char, u64, char, u64); 10] = [
        (3433, ' ', 3906, '*', 3906),
        (33177, ' ', 37758, '*', 37758),
        (270152, 'b', 270468, 'b', 264771),
        (1891062, 'b', 1893276, 'b', 1853397),
        (11556490, ' ', 11594310, '*', 11594310),
        (62405042, ' ', 62609274, '*', 62609274),
        (300678837, 'b', 300700062, 'b', 300496392),
        (1302941625, 'b', 1302990507, 'b', 1302151032),
        (5111540218, ' ', 5112164988, '*', 5112164988),
        (18255500778, ' ', 18257732100, '*', 18257732100),
    ];
    let t3: [(u64, char, u64, char, u64); 10] = [
        (3723, 'b', 3906, 'b', 0),
        (36609, ' ', 41664, '*', 41664),
        (303329, 'b', 303354, 'b', 0),
        (2161214, 'b', 2163744, 'b', 2118168),
        (13447552, 'b', 13447707, 'b', 0),
        (73961530, ' ', 74203584, '*', 74203584),
        (363083878, 'b', 363105666, 'b', 0),
        (1603620460, 'b', 1603680624, 'b', 1602647424),
        (6414481842, 'b', 6414487191, 'b', 0),
        (23367040996, ' ', 23369897088, '*', 23369897088),
    ];
    for (table, n, rows) in [(TableId::II, 63, t2), (TableId::III, 64, t3)] {
        for (i, (avg, am, max, mm, rs)) in rows.into_iter().enumerate() {
            let w = 5 + i;
            b.bound(table, (n, 6, w), avg, mark(am), (63, 52, 5));
            b.reference(table, Column::Max, (n, 6, w), max, mark(mm), MAX_REASON);
            if rs != 0 {
                b.reference(
                    table,
                    Column::Prior,
                    (n, 6, w),
                    rs,
                    Mark::Plain,
                    PRIOR_REASON,
                );
            }
        }
    }
    all.extend(b.entries);

    // ex3: [31,13,9] matrix code.
    let mut b = Builder {
        example: Example::Ex3,
        entries: Vec::new(),
    };
    let g = Source::Matrix {
        file: MATRIX_31_13,
        shorten: 0,
    };
    for (i, v) in [387, 612, 872, 1106].into_iter().enumerate() {
        b.sweep(TableId::IV, (31, 10, 11 + i), v, Mark::Bold, &[(g, Fixed)]);
    }
    for (i, v) in [585, 953, 1443, 1923].into_iter().enumerate() {
        b.sweep(TableId::V, (32, 10, 11 + i), v, Mark::Bold, &[(g, Extend)]);
    }
    let g2 = Source::Matrix {
        file: MATRIX_31_13,
        shorten: 2,
    };
    b.sweep(
        TableId::Scalar,
        (30, 10, 12),
        390,
        Mark::Plain,
        &[(g2, Extend)],
    );
    all.extend(b.entries);

    // ex4: BCH (31,11) and its shortenings by one and two positions.
    let mut b = Builder {
        example: Example::Ex4,
        entries: Vec::new(),
    };
    let bch = Source::Bch31 { shorten: 0 };
    let s1 = Source::Bch31 { shorten: 1 };
    let s2 = Source::Bch31 { shorten: 2 };
    for (i, v) in [40, 87, 186, 310, 400, 510].into_iter().enumerate() {
        b.sweep(TableId::VI, (31, 12, 9 + i), v, Mark::Bold, &[(bch, Fixed)]);
    }
    for (i, v) in [40, 122, 186, 496, 400, 900].into_iter().enumerate() {
        b.sweep(
            TableId::VII,
            (32, 12, 9 + i),
            v,
            Mark::Bold,
            &[(bch, Extend)],
        );
    }
    for (i, v) in [76, 114, 140].into_iter().enumerate() {
        b.sweep(
            TableId::Scalar,
            (29, 12, 11 + i),
            v,
            Mark::Plain,
            &[(s2, Fixed)],
        );
    }
    for (i, v) in [66, 120, 190, 234, 288].into_iter().enumerate() {
        b.sweep(
            TableId::Scalar,
            (30, 12, 10 + i),
            v,
            Mark::Plain,
            &[(s1, Fixed), (s2, Extend)],
        );
    }
    all.extend(b.entries);

    // ex5: [31,7,13] matrix code.
    let mut b = Builder {
        example: Example::Ex5,
        entries: Vec::new(),
    };
    let g = Source::Matrix {
        file: MATRIX_31_7,
        shorten: 0,
    };
    for (i, v) in [29, 42].into_iter().enumerate() {
        b.sweep(
            TableId::Scalar,
            (32, 14, 12 + i),
            v,
            Mark::Plain,
            &[(g, Extend)],
        );
    }
    all.extend(b.entries);

    // ex6: punctured RM(1,5); the same three bounds are listed for n = 31, 32.
    let mut b = Builder {
        example: Example::Ex6,
        entries: Vec::new(),
    };
    let rm = Source::Rm32Punctured;
    for (i, v) in [16, 21, 31].into_iter().enumerate() {
        b.sweep(
            TableId::Scalar,
            (31, 16, 13 + i),
            v,
            Mark::Plain,
            &[(rm, Fixed)],
        );
    }
    for (i, v) in [16, 21, 31].into_iter().enumerate() {
        b.sweep(
            TableId::Scalar,
            (32, 16, 13 + i),
            v,
            Mark::Plain,
            &[(rm, Extend)],
        );
    }
    all.extend(b.entries);
    all
}

/// Every published value, in example then table order.
pub fn registry() -> &'static [ExpectedEntry] {
    static REGISTRY: OnceLock<Vec<ExpectedEntry>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

pub fn entries_for(example: Example) -> impl Iterator<Item = &'static ExpectedEntry> {
    registry().iter().filter(move |e| e.example == example)
}
