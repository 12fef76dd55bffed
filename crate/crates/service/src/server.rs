use std::future::Future;
use std::path::PathBuf;

use argnet_core::eval::CredibilityConfig;

use crate::error::ServiceError;
use crate::http::{router, AppState};
use crate::store::Store;

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    /// `host:port`.
    pub listen_address: String,
    pub data_directory: PathBuf,
    /// Seeds the credibility config of a fresh data directory.
    pub active_config_preset: String,
    pub cors_allowed_origins: Vec<String>,
}

impl ServiceConfig {
    pub fn check(&self) -> Result<(), ServiceError> {
        if CredibilityConfig::preset(&self.active_config_preset).is_none() {
            return Err(ServiceError::UnknownPreset(self.active_config_preset.clone()));
        }
        Ok(())
    }
}

/// Serves until `shutdown` completes, then writes a final checkpoint.
pub async fn serve(config: ServiceConfig, shutdown: impl Future<Output = ()> + Send + 'static) -> Result<(), ServiceError> {
    config.check()?;
    let store = Store::open(&config.data_directory, &config.active_config_preset)?;
    let listener = tokio::net::TcpListener::bind(&config.listen_address)
        .await
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::AddrInUse => ServiceError::AddressInUse(config.listen_address.clone()),
            _ => ServiceError::Io(e),
        })?;
    log::info!("listening on {}", listener.local_addr()?);
    let state = AppState::new(store);
    let app = router(state.clone(), &config.cors_allowed_origins);
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await?;
    state.flush().await?;
    log::info!("shut down cleanly");
    Ok(())
}
