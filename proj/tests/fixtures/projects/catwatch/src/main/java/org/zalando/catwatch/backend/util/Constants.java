package org.zalando.catwatch.backend.util;

public final class Constants {
    public static final String API_REQUEST_PARAM_ORGANIZATIONS = "organizations";
    public static final String API_REQUEST_PARAM_STARTDATE = "start_date";
    public static final String API_REQUEST_PARAM_ENDDATE = "end_date";
    public static final String API_REQUEST_PARAM_LIMIT = "limit";
    public static final String API_REQUEST_PARAM_SORTBY = "sortBy";

    private Constants() {
    }
}
