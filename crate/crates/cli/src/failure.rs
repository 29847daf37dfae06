use qq_core::Error;

pub const RUNTIME: u8 = 1;
pub const INVALID: u8 = 2;
pub const UNSUPPORTED: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn runtime(message: impl Into<String>) -> Self {
        Failure { code: RUNTIME, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: INVALID, message: message.into() }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        Failure { code: UNSUPPORTED, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => INVALID,
            Error::Unsupported(_) | Error::CompositeDimension(_) => UNSUPPORTED,
            _ => RUNTIME,
        };
        Failure { code, message: e.to_string() }
    }
}
