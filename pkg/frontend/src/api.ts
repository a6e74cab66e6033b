import { StatusReport, ThresholdRecord } from "./types";

export class ApiError extends Error {
    readonly status: number;

    constructor(status: number, message: string) {
        super(message);
        this.status = status;
    }
}

async function parseError(response: Response): Promise<ApiError> {
    let message = `request failed (${response.status})`;
    try {
        const data = await response.json();
        if (data && typeof data.error === "string") {
            message = data.error;
        }
    } catch {
        // keep the generic message
    }
    return new ApiError(response.status, message);
}

/** Thin typed client for the monitoring service; the UI does no math. */
export class ApiClient {
    readonly baseUrl: string;

    constructor(baseUrl = "") {
        this.baseUrl = baseUrl.replace(/\/$/, "");
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const response = await fetch(this.baseUrl + path, {
            method,
            headers: body === undefined ? undefined : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (!response.ok) {
            throw await parseError(response);
        }
        return (await response.json()) as T;
    }

    async createSession(n: number): Promise<string> {
        const data = await this.request<{ session_id: string }>("POST", "/sessions", { n });
        return data.session_id;
    }

    putComparison(sessionId: string, i: number, j: number, value: number): Promise<StatusReport> {
        return this.request<StatusReport>("PUT", `/sessions/${sessionId}/comparisons`, { i, j, value });
    }

    deleteComparison(sessionId: string, i: number, j: number): Promise<StatusReport> {
        return this.request<StatusReport>("DELETE", `/sessions/${sessionId}/comparisons/${i}/${j}`);
    }

    getStatus(sessionId: string): Promise<StatusReport> {
        return this.request<StatusReport>("GET", `/sessions/${sessionId}/status`);
    }

    getThreshold(n: number, m: number, code?: string): Promise<ThresholdRecord> {
        const query = code ? `?n=${n}&m=${m}&code=${code}` : `?n=${n}&m=${m}`;
        return this.request<ThresholdRecord>("GET", `/thresholds${query}`);
    }
}
