import json
import os
import uuid
from datetime import datetime
from enum import Enum

# Chemin du fichier de logs (remplacé par QSOLVE_LOG_FILE au démarrage du CLI)
LOG_FILE = os.path.join("logs", "experiment_data.json")


class ActionType(str, Enum):
    """
    Types d'actions enregistrées, un par sous-commande du CLI.
    """
    SOLVE = "SOLVE"          # Résolution d'une équation (forme close et/ou oracle)
    GENERATE = "GENERATE"    # Génération d'une instance aléatoire
    VERIFY = "VERIFY"        # Campagne de vérification des identités
    BENCH = "BENCH"          # Mesure de performance


REQUIRED_KEYS = ["input_summary", "outcome"]


def log_experiment(component: str, method: str, action: ActionType, details: dict, status: str):
    """
    Enregistre une exécution du solveur dans le journal JSON.

    Args:
        component (str): Composant à l'origine de l'entrée (ex: "CLI", "VerificationSuite").
        method (str): Méthode utilisée (ex: "ClosedForm", "Oracle", "N/A").
        action (ActionType): Le type d'action effectué (utiliser l'Enum ActionType).
        details (dict): Détails. DOIT contenir 'input_summary' et 'outcome'.
        status (str): "SUCCESS", "FAILURE" ou "PARTIAL".

    Raises:
        ValueError: Si l'action est invalide ou si des champs obligatoires manquent.
    """

    # --- 1. VALIDATION DU TYPE D'ACTION ---
    valid_actions = [a.value for a in ActionType]
    if isinstance(action, ActionType):
        action_str = action.value
    elif action in valid_actions:
        action_str = action
    else:
        raise ValueError(f"❌ Action invalide : '{action}'. Utilisez la classe ActionType (ex: ActionType.SOLVE).")

    # --- 2. VALIDATION DES DÉTAILS ---
    missing_keys = [key for key in REQUIRED_KEYS if key not in details]
    if missing_keys:
        raise ValueError(
            f"❌ Erreur de Logging (Composant: {component}) : "
            f"Les champs {missing_keys} sont manquants dans le dictionnaire 'details'."
        )

    # --- 3. PRÉPARATION DE L'ENTRÉE ---
    log_dir = os.path.dirname(LOG_FILE)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    entry = {
        "id": str(uuid.uuid4()),
        "timestamp": datetime.now().isoformat(),
        "component": component,
        "method": method,
        "action": action_str,
        "details": details,
        "status": status
    }

    # --- 4. LECTURE & ÉCRITURE ---
    data = []
    if os.path.exists(LOG_FILE):
        try:
            with open(LOG_FILE, 'r', encoding='utf-8') as f:
                content = f.read().strip()
                if content:
                    data = json.loads(content)
        except json.JSONDecodeError:
            print(f"⚠️ Attention : Le fichier de logs {LOG_FILE} était corrompu. Une nouvelle liste a été créée.")
            data = []

    data.append(entry)

    with open(LOG_FILE, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=4, ensure_ascii=False)


def set_log_file(path: str) -> None:
    """Redirige le journal (utilisé par le CLI et les tests)."""
    global LOG_FILE
    LOG_FILE = path
