//! Live sessions, optionally persisted as one JSON-lines log per session.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use attrex::exploration::write_trace;

use crate::config::SessionConfig;
use crate::error::{Result, ServiceError};
use crate::session::{Answer, ExportFormat, ListEntry, QuestionView, Session, StateView};

#[derive(Default)]
pub struct Store {
    dir: Option<PathBuf>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

impl Store {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens `dir`, creating it if needed, and restores every `*.jsonl`
    /// session log in it. Logs cut short between writes are repaired.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        let mut paths: Vec<PathBuf> = fs::read_dir(&dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        paths.sort();
        for path in paths {
            let text = fs::read_to_string(&path)?;
            let (session, repaired) = Session::from_log(&text).map_err(|e| match e {
                ServiceError::Log { line, message } => ServiceError::Log {
                    line,
                    message: format!("{}: {message}", path.display()),
                },
                other => ServiceError::Internal(format!("{}: {other}", path.display())),
            })?;
            if !valid_id(session.id()) || path.file_stem() != Some(session.id().as_ref()) {
                return Err(ServiceError::Internal(format!(
                    "{}: session id `{}` does not match the file name",
                    path.display(),
                    session.id()
                )));
            }
            if repaired {
                rewrite(&path, &session.to_log())?;
            }
            sessions.insert(session.id().to_owned(), Arc::new(Mutex::new(session)));
        }
        Ok(Store {
            dir: Some(dir),
            sessions: RwLock::new(sessions),
        })
    }

    fn path(&self, id: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{id}.jsonl")))
    }

    fn handle(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_owned()))
    }

    /// Runs `f` on a consistent snapshot of one session.
    pub fn with_session<T>(&self, id: &str, f: impl FnOnce(&Session) -> T) -> Result<T> {
        let handle = self.handle(id)?;
        let guard = handle.lock().expect("session lock");
        Ok(f(&guard))
    }

    pub fn create(&self, config: SessionConfig) -> Result<QuestionView> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        self.create_with_id(id, config)
    }

    pub fn create_with_id(&self, id: String, config: SessionConfig) -> Result<QuestionView> {
        if !valid_id(&id) {
            return Err(ServiceError::BadRequest(format!("invalid session id `{id}`")));
        }
        let session = Session::create(id.clone(), config)?;
        let mut table = self.sessions.write().expect("session table lock");
        if table.contains_key(&id) {
            return Err(ServiceError::Conflict(format!("session `{id}` already exists")));
        }
        if let Some(path) = self.path(&id) {
            let mut file = OpenOptions::new().write(true).create_new(true).open(path)?;
            file.write_all(session.to_log().as_bytes())?;
            file.sync_data()?;
        }
        let view = session.question_view();
        table.insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    /// Applies an answer. The new events reach the log before the session
    /// changes, so a failed write leaves both untouched.
    pub fn answer(&self, id: &str, answer: &Answer) -> Result<QuestionView> {
        let handle = self.handle(id)?;
        let mut guard = handle.lock().expect("session lock");
        let mut next = guard.clone();
        let events = next.answer(answer)?;
        if let Some(path) = self.path(id) {
            let mut file = OpenOptions::new().append(true).open(path)?;
            file.write_all(write_trace(&events).as_bytes())?;
            file.sync_data()?;
        }
        *guard = next;
        Ok(guard.question_view())
    }

    pub fn question(&self, id: &str) -> Result<QuestionView> {
        self.with_session(id, Session::question_view)
    }

    pub fn state(&self, id: &str) -> Result<StateView> {
        self.with_session(id, Session::state_view)
    }

    pub fn export(&self, id: &str, format: ExportFormat) -> Result<String> {
        self.with_session(id, |s| s.export(format))?
    }

    /// All sessions, ordered by id.
    pub fn list(&self) -> Vec<ListEntry> {
        let handles: Vec<_> = self
            .sessions
            .read()
            .expect("session table lock")
            .values()
            .cloned()
            .collect();
        let mut out: Vec<ListEntry> = handles
            .iter()
            .map(|h| h.lock().expect("session lock").list_entry())
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }
}

fn rewrite(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("jsonl.tmp");
    let mut file = File::create(&tmp)?;
    file.write_all(text.as_bytes())?;
    file.sync_data()?;
    fs::rename(tmp, path)?;
    Ok(())
}
