//! Every cell of the operator, data type and built-in method
//! tables, looked up in both directions with its exact surface form.

use distil_core::registry::Category;
use distil_core::{LanguageId, MorphemeRegistry};

use LanguageId::{CSharp, Cpp, Java, Python};

const LANGS: [LanguageId; 4] = [Cpp, Java, CSharp, Python];

/// unified, then C++, Java, C#, Python; `-` has no counterpart.
pub const OPERATORS: [[&str; 5]; 10] = [
    ["a+b", "a+b", "a+b", "a+b", "a+b"],
    ["a-b", "a-b", "a-b", "a-b", "a-b"],
    ["a*b", "a*b", "a*b", "a*b", "a*b"],
    ["a/b", "a/b", "a/b", "a/b", "a/b"],
    ["a%b", "a%b", "a%b", "a%b", "a%b"],
    ["int(a/b)", "int(a/b)", "int(a/b)", "int(a/b)", "a//b"],
    [
        "pow(a,b)",
        "pow(a,b)",
        "Math.pow(a,b)",
        "Math.pow(a,b)",
        "a**b",
    ],
    ["a&&b", "a&&b", "a&&b", "a&&b", "a and b"],
    ["a||b", "a||b", "a||b", "a||b", "a or b"],
    ["!a", "!a", "!a", "!a", "not a"],
];

pub const DATA_TYPES: [[&str; 5]; 10] = [
    ["int a", "int a", "int a", "int a", "int a"],
    ["float a", "float a", "float a", "float a", "float a"],
    ["string a", "std::string a", "String a", "string a", "str a"],
    ["bool a", "bool a", "boolean a", "bool a", "bool a"],
    ["char a", "char a", "char a", "char a", "-"],
    ["vector<> a", "vector<> a", "Vector<> a", "List<> a", "a=[]"],
    [
        "map<> a",
        "std::map<> a",
        "HashMap<> a",
        "Dictionary<> a",
        "a={}",
    ],
    [
        "set<> a",
        "std::set<> a",
        "HashSet<> a",
        "HashSet<> a",
        "a=set()",
    ],
    [
        "queue<> a",
        "std::queue<> a",
        "Queue<> a",
        "Queue<> a",
        "a=queue.Queue()",
    ],
    ["deque<> a", "std::deque<> a", "Deque<> a", "-", "a=deque()"],
];

// Two C++ cells are misprinted in the reference tables (`rand(b-a)%+b` and
// `count<<a<<endl`); the registry carries the intended expressions.
pub const BUILTINS: [[&str; 5]; 10] = [
    [
        "sqrt(a)",
        "sqrt(a)",
        "Math.sqrt(a)",
        "Math.Sqrt(a)",
        "math.sqrt(a)",
    ],
    [
        "log(a)",
        "log(a)",
        "Math.log(a)",
        "Math.Log(a)",
        "math.log(a)",
    ],
    [
        "floor(a)",
        "floor(a)",
        "Math.floor(a)",
        "Math.Floor(a)",
        "math.floor(a)",
    ],
    [
        "rand(a,b)",
        "rand()%(b-a)+a",
        "rand.nextInt(b-a)+b",
        "rand.Next(a,b)",
        "random.randint(a,b)",
    ],
    [
        "print(a)",
        "cout<<a",
        "System.out.print(a)",
        "Console.Write(a)",
        "print(a, end='')",
    ],
    [
        "println(a)",
        "cout<<a<<endl",
        "System.out.println(a)",
        "Console.WriteLine(a)",
        "print(a)",
    ],
    [
        "islower(a)",
        "islower(a)",
        "Character.isLowerCase(a)",
        "Char.IsLower(a)",
        "a.islower()",
    ],
    [
        "tolower(a)",
        "tolower(a)",
        "Character.toLowerCase(a)",
        "Char.ToLower(a)",
        "a.tolower()",
    ],
    [
        "replace(c,a,b)",
        "c.replace(a,b)",
        "c.replace(a,b)",
        "c.replace(a,b)",
        "c.replace(a,b)",
    ],
    [
        "length(a)",
        "a.length()",
        "a.length()",
        "a.Length",
        "len(a)",
    ],
];

pub fn check(category: Category, table: &[[&str; 5]]) -> usize {
    let reg = MorphemeRegistry::builtin();
    let mut cells = 0;
    for row in table {
        let unified = row[0];
        for (i, lang) in LANGS.into_iter().enumerate() {
            let surface = row[i + 1];
            cells += 1;
            if surface == "-" {
                assert_eq!(
                    reg.reverse_lookup(unified, lang, &[]),
                    None,
                    "{unified} in {lang}"
                );
                continue;
            }
            assert_eq!(
                reg.lookup(lang, category, surface, &[]).as_deref(),
                Some(unified),
                "{lang} `{surface}`"
            );
            assert_eq!(
                reg.reverse_lookup(unified, lang, &[]).as_deref(),
                Some(surface),
                "{unified} -> {lang}"
            );
        }
    }
    cells
}

#[test]
fn operator_cells() {
    assert_eq!(check(Category::Operator, &OPERATORS), 40);
}

#[test]
fn data_type_cells() {
    assert_eq!(check(Category::DataType, &DATA_TYPES), 40);
}

#[test]
fn builtin_cells() {
    assert_eq!(check(Category::Builtin, &BUILTINS), 40);
}

#[test]
fn python_power_binds_arguments() {
    let reg = MorphemeRegistry::builtin();
    let args = [('a', "x"), ('b', "n + 1")];
    assert_eq!(
        reg.lookup(Python, Category::Operator, "a**b", &args)
            .as_deref(),
        Some("pow(x,(n + 1))")
    );
    assert_eq!(
        reg.reverse_lookup("length(a)", CSharp, &[('a', "s")])
            .as_deref(),
        Some("s.Length")
    );
}

#[test]
fn registry_has_exactly_the_table_rows() {
    assert_eq!(MorphemeRegistry::builtin().len(), 30);
}
