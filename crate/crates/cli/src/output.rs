use serde_json::{Map, Number, Value};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// 17 significant digits, positional for moderate exponents.
pub fn fmt17(x: f64) -> String {
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..17).contains(&exp) {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let body = if exp >= 0 {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}.0")
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt17(x)).expect("valid JSON number"))
    } else {
        Value::Null
    }
}

/// `{"value": …, "error": …, "method": …}`.
pub fn tagged(value: f64, error: Option<f64>, method: &str) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), num(value));
    if let Some(e) = error {
        m.insert("error".into(), num(e));
    }
    m.insert("method".into(), Value::String(method.into()));
    Value::Object(m)
}

/// An exact integer, carried as a decimal string.
pub fn exact(digits: String) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), Value::String(digits));
    m.insert("method".into(), Value::String("exact".into()));
    Value::Object(m)
}

pub fn print_json(v: &Value) {
    emit(format_args!("{}", serde_json::to_string_pretty(v).expect("serializable")));
}

/// Writes one line to stdout. A closed pipe ends the process quietly.
pub fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(args).and_then(|_| out.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

#[macro_export]
macro_rules! out {
    ($($arg:tt)*) => { $crate::output::emit(format_args!($($arg)*)) };
}

#[macro_export]
macro_rules! obj {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $( m.insert(String::from($k), serde_json::Value::from($v)); )*
        serde_json::Value::Object(m)
    }};
}
